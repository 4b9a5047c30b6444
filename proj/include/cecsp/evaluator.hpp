// Scores an event order by solving the order-fixed schedule LP.
//
// Variables: event times t_i, consumption p_{j,i} for the intervals inside
// job j's window, and (optionally) slack on the rate bounds and on the
// capacity of each interval. Slack is penalized in the objective so that
// infeasible orders still get a finite, comparable score.

#ifndef CECSP_EVALUATOR_HPP
#define CECSP_EVALUATOR_HPP

#include <map>
#include <optional>
#include <vector>

#include "cecsp/core.hpp"
#include "cecsp/lp.hpp"

namespace cecsp {

struct PenaltyWeights {
  double bound = 5.0;     // L^B, per unit of rate-bound violation
  double capacity = 5.0;  // L^R, per unit of capacity violation
};

enum class SlackMode {
  kPenalized,  // slack columns present, priced by PenaltyWeights
  kDisabled,   // no slack columns: the true constraints
};

// The LP plus the column bookkeeping needed to read a Schedule back out.
struct ScheduleLp {
  LinearProgram program;
  std::vector<int> time_column;  // by EventId::index()
  std::map<IntervalKey, int> consumption_column;
  std::map<IntervalKey, int> slack_lower_column;
  std::map<IntervalKey, int> slack_upper_column;
  std::map<EventId, int> slack_capacity_column;
  int num_ordering_rows = 0;
};

// Release times and deadlines become bounds on the time columns. Throws
// std::invalid_argument when `order` does not match `inst`.
ScheduleLp build_schedule_lp(const Instance& inst, const EventOrder& order,
                             const PenaltyWeights& weights,
                             SlackMode mode = SlackMode::kPenalized);

LpSolution solve_schedule_lp(const LinearProgram& lp);

struct Evaluation {
  std::optional<Schedule> schedule;  // empty when the LP is infeasible
  double score = kInfinity;          // +inf for LP-infeasible orders
  int lp_iterations = 0;

  bool lp_feasible() const { return schedule.has_value(); }
};

// build + solve + extract. Throws SolverError when the backend hits its
// iteration limit or breaks down numerically.
Evaluation score_order(const Instance& inst, const EventOrder& order,
                       const PenaltyWeights& weights,
                       SlackMode mode = SlackMode::kPenalized);

// Lower bound on any order's score: every job completes no earlier than
// r_j + E_j / P+_j.
double completion_lower_bound(const Instance& inst);

}  // namespace cecsp

#endif  // CECSP_EVALUATOR_HPP
