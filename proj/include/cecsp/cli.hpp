// The `cecsp` command-line tool, callable in-process for tests.
//
// Exit codes:
//   0  success (for check/validate/exact: the verdict is positive)
//   1  negative verdict: flow check failed, schedule infeasible, no feasible order
//   2  bad usage or conflicting flags
//   3  file could not be read or written
//   4  malformed input document
//   5  LP backend failure
//   6  enumeration refused by the size guard
//
// CECSP_OUTPUT_DIR, when set, replaces "." as the default output directory.

#ifndef CECSP_CLI_HPP
#define CECSP_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cecsp/core.hpp"
#include "cecsp/exact.hpp"
#include "cecsp/search.hpp"
#include "json.hpp"

namespace cecsp::cli {

enum ExitCode {
  kExitOk = 0,
  kExitNegative = 1,
  kExitUsage = 2,
  kExitFile = 3,
  kExitFormat = 4,
  kExitSolver = 5,
  kExitGuard = 6,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::filesystem::path default_output_dir();

struct InstanceTag {
  int n = 0;
  double capacity = 0;
  bool adversarial = false;
  int index = 0;
};

struct SaOutcome {
  double wall_time = 0;
  double score = kInfinity;  // best feasible when found, else penalized best
  bool feasible = false;
  double init_score = kInfinity;
};

struct ExactOutcome {
  double wall_time = 0;
  double objective = kInfinity;
  ExactStatus status = ExactStatus::kNotRun;
};

// One row of a results table.
struct RunRecord {
  InstanceTag tag;
  bool flow_pass = false;
  std::optional<double> best_known;
  SaOutcome sa;
  std::optional<ExactOutcome> exact;
};

nlohmann::json to_json(const RunRecord& record);

std::string gantt_svg(const Instance& inst, const Schedule& sched);

struct BatchOptions {
  std::vector<int> sizes{5};
  std::vector<double> capacities{50};
  std::vector<bool> adversarial{false};
  int count = 4;  // instances per (n, P, adv) combination
  std::uint64_t seed = 1;
  std::optional<long> max_iter;   // SA override; defaults come from n
  int exact_max_jobs = 4;         // run the oracle up to this size
  int threads = 0;                // 0 = OpenMP default
  std::optional<std::filesystem::path> instance_dir;  // write generated instances
};

// Generates and solves every instance; rows come back in a fixed order.
std::vector<RunRecord> run_batch(const BatchOptions& opts);
// Single-threaded reference with the same output.
std::vector<RunRecord> run_batch_serial(const BatchOptions& opts);

// Reference CSV: header with n,P,adv,idx,best_known. Throws FormatError.
void attach_best_known(std::vector<RunRecord>& records,
                       const std::filesystem::path& reference_csv);

std::string batch_csv(const std::vector<RunRecord>& records, bool with_timing = true);

}  // namespace cecsp::cli

#endif  // CECSP_CLI_HPP
