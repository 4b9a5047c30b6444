// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any of them fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cecsp/cli.hpp"
#include "cecsp/evaluator.hpp"
#include "cecsp/exact.hpp"
#include "cecsp/feasibility.hpp"
#include "cecsp/generator.hpp"
#include "cecsp/instance_io.hpp"
#include "cecsp/search.hpp"
#include "fixtures.hpp"

namespace {

using namespace cecsp;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

// n = 3 instances shared by criteria 1, 2 and 5.
std::vector<Instance> desk_instances() {
  std::vector<Instance> out;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) out.push_back(testing::generated(3, seed));
  return out;
}

std::vector<ExactResult> g_oracle;  // filled by criterion 1
long g_sound_checked = 0;           // feasible schedules seen by criterion 5
long g_sound_failed = 0;

void note_feasible_schedule(const Instance& inst, const Schedule& sched) {
  if (!validate_schedule(inst, sched.order, sched).is_feasible) return;
  ++g_sound_checked;
  if (!check_feasibility(inst).passes) ++g_sound_failed;
}

Verdict criterion1() {
  const std::vector<Instance> insts = desk_instances();
  double slowest = 0;
  int validated = 0, optimal = 0;
  bool ok = true;
  g_oracle.clear();
  for (const Instance& inst : insts) {
    const auto t = Clock::now();
    const ExactResult r = enumerate_exact(inst, implicit_precedences(inst));
    slowest = std::max(slowest, seconds_since(t));
    g_oracle.push_back(r);
    if (r.status != ExactStatus::kOptimal) continue;
    ++optimal;
    if (validate_schedule(inst, *r.order, *r.schedule, 1e-6).is_feasible) {
      ++validated;
      note_feasible_schedule(inst, *r.schedule);
    }
  }
  ok = slowest < 10 && validated == optimal;

  // Wide windows: no pair of events is forced by the time windows.
  const Instance open(50, {{10, 0, 10, 1, 20, 1, 0}, {10, 0, 10, 1, 20, 2, 0},
                           {10, 0, 10, 1, 20, 3, 0}});
  const PrecedenceSet prec = implicit_precedences(open);
  const bool no_window_pairs = prec.size() == PrecedenceSet::job_pairs(3).size();
  const ExactResult all = enumerate_exact(open, PrecedenceSet::job_pairs(3));
  ok = ok && no_window_pairs && all.explored == 90;

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d/%d optimal schedules validate, slowest %.3f s, %llu orders enumerated", validated,
                optimal, slowest, static_cast<unsigned long long>(all.explored));
  return {ok, buf};
}

Verdict criterion2() {
  std::vector<Instance> insts = desk_instances();
  std::vector<ExactResult> oracle = g_oracle;
  insts.push_back(testing::three_job_example());
  oracle.push_back(enumerate_exact(insts.back(), implicit_precedences(insts.back())));

  const auto t = Clock::now();
  int feasible = 0, matched = 0, beaten = 0;
  for (std::size_t k = 0; k < insts.size(); ++k) {
    const Instance& inst = insts[k];
    SAConfig cfg = SAConfig::defaults_for(inst.num_jobs());
    cfg.max_iter = 5000;
    cfg.seed = k + 1;
    const SearchResult sa =
        simulated_annealing(inst, implicit_precedences(inst), cfg, greedy_initial_order(inst));
    if (sa.best_feasible) note_feasible_schedule(inst, *sa.best_feasible);
    if (oracle[k].status != ExactStatus::kOptimal) continue;
    ++feasible;
    if (!sa.best_feasible) continue;
    const double opt = oracle[k].objective;
    const double got = sa.best_feasible->score;
    if (got < opt - 1e-6) ++beaten;
    if (std::abs(got - opt) <= 1e-4 * std::max(1.0, std::abs(opt))) ++matched;
  }
  const double elapsed = seconds_since(t);
  const bool ok = feasible > 0 && matched >= 0.8 * feasible && beaten == 0 && elapsed < 600;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d/%d feasible instances matched, %d beat the oracle, %.1f s",
                matched, feasible, beaten, elapsed);
  return {ok, buf};
}

// Fewer iterations than the n = 10 default keep this under a few minutes
// on one core; it can only make improvement over the greedy start harder.
constexpr long kGreedyCheckIterations = 2000;

Verdict criterion3() {
  int not_worse = 0, better = 0;
  const int runs = 20;
  const auto t = Clock::now();
  for (int k = 0; k < runs; ++k) {
    const Instance inst = testing::generated(10, 1000 + k);
    SAConfig cfg = SAConfig::defaults_for(10);
    cfg.max_iter = kGreedyCheckIterations;
    cfg.seed = k + 1;
    const SearchResult sa =
        simulated_annealing(inst, implicit_precedences(inst), cfg, greedy_initial_order(inst));
    if (sa.best_feasible) note_feasible_schedule(inst, *sa.best_feasible);
    not_worse += sa.best_score <= sa.initial_score;
    better += sa.best_score < sa.initial_score - 1e-9;
  }
  const bool ok = not_worse == runs && better >= 0.7 * runs;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d/%d not worse, %d/%d strictly better (max_iter %ld), %.1f s", not_worse, runs,
                better, runs, kGreedyCheckIterations, seconds_since(t));
  return {ok, buf};
}

Verdict criterion4() {
  const auto t = Clock::now();
  std::vector<Instance> insts;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) insts.push_back(testing::generated(10, seed));
  const std::vector<FeasibilityReport> reports = check_feasibility_batch(insts);
  const double elapsed = seconds_since(t);
  int passed = 0;
  for (const FeasibilityReport& r : reports) passed += r.passes;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d/100 pass, %.3f s", passed, elapsed);
  return {passed >= 90 && elapsed < 5, buf};
}

Verdict criterion5() {
  // Every slack-free order schedule of small instances, on top of the
  // schedules collected by criteria 1-3.
  for (std::uint64_t seed = 1; g_sound_checked < 500 && seed <= 400; ++seed) {
    const double cap = seed % 3 == 0 ? 20 : seed % 3 == 1 ? 50 : 30;
    const Instance inst = testing::generated(3, 5000 + seed, cap, seed % 2 == 0);
    std::vector<int> ids{1, 2, 3, 4, 5, 6};
    do {
      bool ok = true;
      for (int j = 1; j <= 3; ++j) {
        ok = ok && std::find(ids.begin(), ids.end(), 2 * j - 1) <
                       std::find(ids.begin(), ids.end(), 2 * j);
      }
      if (!ok) continue;
      const Evaluation ev =
          score_order(inst, EventOrder::from_ids(ids), {}, SlackMode::kDisabled);
      if (ev.lp_feasible()) note_feasible_schedule(inst, *ev.schedule);
    } while (std::next_permutation(ids.begin(), ids.end()));
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%ld feasible schedules, %ld flow failures", g_sound_checked,
                g_sound_failed);
  return {g_sound_checked >= 500 && g_sound_failed == 0, buf};
}

Verdict criterion6() {
  std::mt19937_64 rng(606);
  int agree = 0, both_feasible = 0;
  for (int k = 0; k < 10; ++k) {
    const int n = 2 + k % 3;
    const Instance inst = testing::generated(n, 600 + k);
    const PrecedenceSet prec = implicit_precedences(inst);
    EventOrder order = testing::random_order(n, rng);
    for (int tries = 0; tries < 1000 && !prec.respected_by(order); ++tries) {
      order = testing::random_order(n, rng);
    }
    const LpSolution fixed = solve_lp(fix_order(build_milp(inst), order));
    const Evaluation ev = score_order(inst, order, {}, SlackMode::kDisabled);
    const bool milp_ok = fixed.status == LpStatus::kOptimal;
    if (milp_ok != ev.lp_feasible()) continue;
    if (!milp_ok) {
      ++agree;
      continue;
    }
    ++both_feasible;
    agree += std::abs(fixed.objective - ev.score) <= 1e-6;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d/10 agree (%d with a finite optimum)", agree, both_feasible);
  return {agree == 10, buf};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict criterion7() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "cecsp_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path inst = dir / "inst.json";
  write_instance(inst, testing::generated(6, 77));
  std::string scores[2];
  for (int run = 0; run < 2; ++run) {
    const std::string tag = std::to_string(run);
    std::ostringstream out, err;
    const int code = cli::run({"solve", inst.string(), "--seed", "7", "-o",
                               (dir / ("s" + tag + ".json")).string(), "--record",
                               (dir / ("r" + tag + ".json")).string()},
                              out, err);
    if (code != cli::kExitOk) return {false, "solve exited with " + std::to_string(code)};
    const nlohmann::json rec = nlohmann::json::parse(slurp(dir / ("r" + tag + ".json")));
    scores[run] = rec["sa"]["score"].dump() + " " + rec["sa"]["init_score"].dump();
  }
  const bool same_schedule = slurp(dir / "s0.json") == slurp(dir / "s1.json");
  const bool same_score = scores[0] == scores[1];
  fs::remove_all(dir);
  return {same_schedule && same_score,
          std::string("schedule files ") + (same_schedule ? "identical" : "differ") +
              ", scores " + (same_score ? "identical" : "differ")};
}

Verdict criterion8() {
  // Value reproduction of the published tables is out of scope; only the
  // table schema produced by the batch runner is checked.
  cli::BatchOptions opts;
  opts.sizes = {2};
  opts.count = 1;
  opts.max_iter = 20;
  const std::string csv = cli::batch_csv(cli::run_batch(opts), false);
  const std::string header = csv.substr(0, csv.find('\n'));
  const bool ok =
      header == "n,P,adv,idx,flow_feas,sa_time,sa_obj,sa_feasible,init_obj,exact_time,exact_obj";
  return {ok, "non-goal: published values not reproduced; batch table schema " +
                  std::string(ok ? "present" : "missing")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"oracle correctness at n = 3", criterion1},
      {"annealing matches the oracle", criterion2},
      {"annealing improves the greedy start", criterion3},
      {"flow check calibration", criterion4},
      {"flow check soundness", criterion5},
      {"fixed-order MILP equals evaluator LP", criterion6},
      {"solve determinism", criterion7},
      {"published table values", criterion8},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s %zu %s: %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
