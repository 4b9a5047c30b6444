// Local search over event orders: the deadline-greedy initial order, the
// three neighborhood operators and the simulated-annealing driver.

#ifndef CECSP_SEARCH_HPP
#define CECSP_SEARCH_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "cecsp/core.hpp"
#include "cecsp/evaluator.hpp"
#include "json.hpp"

namespace cecsp {

using Rng = std::mt19937_64;

struct RestartPolicy {
  bool enabled = false;
  double min_wall_seconds = 1800;  // restart only while younger than this
  int n_random_swaps = 100;
};

struct SAConfig {
  double t_init = 1;
  double alpha = 0.95;
  int alpha_period = 4;
  long max_iter = 10000;
  PenaltyWeights penalties;
  std::array<double, 3> op_probs{0.75, 0.15, 0.10};  // swap, move, pair
  RestartPolicy restart;
  std::uint64_t seed = 1;
  double time_limit_seconds = 0;  // 0 = none; checked between iterations
  double tolerance = kDefaultTolerance;

  // T_init = n, alpha_period = 4(2n-1); restarts switched on from n = 50.
  static SAConfig defaults_for(int num_jobs);
  // Throws std::invalid_argument.
  void validate() const;
};

nlohmann::json to_json(const SAConfig& config);
// Missing fields keep the values of `base`. Throws FormatError.
SAConfig sa_config_from_json(const nlohmann::json& doc, const SAConfig& base);

EventOrder greedy_initial_order(const Instance& inst);

// Operators return nullopt when the move is rejected without evaluation.
std::optional<EventOrder> op_swap_adjacent(const EventOrder& order,
                                           const PrecedenceSet& prec, int pos);
std::optional<EventOrder> op_move_single(const EventOrder& order,
                                         const PrecedenceSet& prec, int pos,
                                         Rng& rng);
std::optional<EventOrder> op_move_pair(const EventOrder& order,
                                       const PrecedenceSet& prec, int job,
                                       Rng& rng);

// Number of events `pos` can pass on each side before meeting one it is
// related to by `prec`. `skip` (if nonzero) is stepped over, not counted.
struct MoveRange {
  int left = 0;
  int right = 0;
};
MoveRange movement_range(const EventOrder& order, const PrecedenceSet& prec,
                         int pos, EventId skip = EventId{});

enum class TraceKind { kInitial, kCandidate, kAccepted, kRestart };

struct TraceEvent {
  TraceKind kind;
  long iteration;
  const EventOrder& order;
  double score;
  double temperature;
};

struct SearchResult {
  EventOrder best_order;
  Schedule best_schedule;
  double best_score = kInfinity;  // penalized
  bool feasible = false;          // best_schedule validates
  // Lowest score among orders whose schedule validates. Can differ from the
  // penalized best, which may sit below the true optimum by using slack.
  std::optional<Schedule> best_feasible;
  double initial_score = kInfinity;
  long iterations = 0;      // accepted candidates
  long accepted_moves = 0;  // same count; kept for reporting
  long evaluations = 0;     // candidates scored (cache hits included)
  long lp_solves = 0;
  int restarts = 0;
  double wall_time = 0;

  // The schedule cmd_solve reports: best feasible when one exists.
  const Schedule& reported() const {
    return best_feasible ? *best_feasible : best_schedule;
  }
};

using TraceObserver = std::function<void(const TraceEvent&)>;

SearchResult simulated_annealing(const Instance& inst, const PrecedenceSet& prec,
                                 const SAConfig& config,
                                 const EventOrder& initial,
                                 const TraceObserver& observer = {});

}  // namespace cecsp

#endif  // CECSP_SEARCH_HPP
