// Exact side of the toolkit: the full MILP with ordering binaries (for
// export to external solvers) and an in-repo oracle that enumerates every
// precedence-respecting event order and solves the slack-free LP for each.

#ifndef CECSP_EXACT_HPP
#define CECSP_EXACT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "cecsp/core.hpp"
#include "cecsp/lp.hpp"

namespace cecsp {

struct MilpModel;
MilpModel build_milp(const Instance& inst);

// Event-based MILP: times t_i, per-interval consumption p_{j,i}, binaries
// a_{i,i'} (i before i') and b_{i,i'} (i' immediately after i). Self pairs
// a_{i,i} do not exist as columns; where a constraint mentions one it is
// the constant 1, which keeps the lower-bound rows inactive on intervals
// that touch the job's window only at an endpoint.
struct MilpModel {
  LinearProgram program;
  int num_jobs = 0;
  double horizon = 0;  // H = max_j deadline; big-M scale

  int time_column(EventId i) const { return i.index(); }
  int consumption_column(int job, EventId i) const;
  int before_column(EventId i, EventId later) const;     // a_{i,i'}
  int successor_column(EventId i, EventId next) const;   // b_{i,i'}
  int num_events() const { return 2 * num_jobs; }

 private:
  friend MilpModel build_milp(const Instance& inst);
  int pair_offset(EventId i, EventId k) const;

  int first_consumption_ = 0;
  int first_before_ = 0;
  int first_successor_ = 0;
};

MilpModel build_milp(const Instance& inst);

// Writes the model in LP text format. Throws FileError.
void export_milp(const MilpModel& model, const std::filesystem::path& path);

// Copy of the model with every a/b column fixed to the values `order`
// implies and integrality dropped: an LP over t and p only.
LinearProgram fix_order(const MilpModel& model, const EventOrder& order);

enum class ExactStatus { kOptimal, kInfeasible, kNotRun };
const char* to_string(ExactStatus status);

struct ExactResult {
  ExactStatus status = ExactStatus::kNotRun;
  double objective = kInfinity;
  std::optional<EventOrder> order;
  std::optional<Schedule> schedule;
  std::uint64_t explored = 0;  // complete orders whose LP was solved
};

struct EnumerationOptions {
  int max_jobs = 7;  // refuse larger instances unless raised
  // Prefixes handed to worker threads; 0 picks a depth automatically.
  int split_depth = 0;
};

// Minimum slack-free LP objective over all linear extensions of `prec`.
// Ties go to the lexicographically smallest order. Throws
// std::invalid_argument when n exceeds the guard and SolverError when an
// LP fails. Parallel over order prefixes with OpenMP; the result is
// identical to enumerate_exact_serial.
ExactResult enumerate_exact(const Instance& inst, const PrecedenceSet& prec,
                            const EnumerationOptions& opts = {});

// Single-threaded reference implementation.
ExactResult enumerate_exact_serial(const Instance& inst,
                                   const PrecedenceSet& prec,
                                   const EnumerationOptions& opts = {});

// Number of linear extensions of `prec` (no LPs solved).
std::uint64_t count_linear_extensions(const PrecedenceSet& prec);

}  // namespace cecsp

#endif  // CECSP_EXACT_HPP
