#include "cecsp/evaluator.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cecsp/error.hpp"

namespace cecsp {

namespace {

std::string tag(const char* prefix, int a) {
  return prefix + std::to_string(a);
}

std::string tag(const char* prefix, int a, int b) {
  return prefix + std::to_string(a) + '_' + std::to_string(b);
}

}  // namespace

ScheduleLp build_schedule_lp(const Instance& inst, const EventOrder& order,
                             const PenaltyWeights& weights, SlackMode mode) {
  const int n = inst.num_jobs();
  if (order.num_jobs() != n) {
    throw std::invalid_argument("event order does not match instance size");
  }
  const bool slack = mode == SlackMode::kPenalized;
  ScheduleLp out;
  LinearProgram& lp = out.program;
  lp.objective_offset = inst.total_offset();

  out.time_column.resize(2 * n);
  for (int i = 1; i <= 2 * n; ++i) {
    const EventId id{i};
    const Job& job = inst.job(id.job());
    const double lower = id.is_start() ? job.release : 0.0;
    const double upper = id.is_start() ? kInfinity : job.deadline;
    const double cost = id.is_start() ? 0.0 : job.weight;
    out.time_column[id.index()] = lp.add_column(tag("t_", i), lower, upper, cost);
  }
  auto time_col = [&](int pos) { return out.time_column[order.at(pos).index()]; };

  // t_{I(e)} <= t_{I(e+1)}
  for (int pos = 1; pos < 2 * n; ++pos) {
    lp.add_row(tag("order_", pos),
               {{time_col(pos), 1.0}, {time_col(pos + 1), -1.0}},
               RowSense::kLessEqual, 0.0);
  }
  out.num_ordering_rows = 2 * n - 1;

  for (int j = 1; j <= n; ++j) {
    const Job& job = inst.job(j);
    std::vector<LpTerm> energy;
    for (const IntervalKey& key : window_keys(order, j)) {
      const int i = key.opening.value;
      const int pos = order.position(key.opening);
      const int p = lp.add_column(tag("p_", j, i), 0.0, kInfinity, 0.0);
      out.consumption_column[key] = p;
      energy.push_back({p, 1.0});

      // p >= P-(t_next - t_cur) - s-
      std::vector<LpTerm> lo{{p, 1.0},
                             {time_col(pos + 1), -job.p_min},
                             {time_col(pos), job.p_min}};
      // p <= P+(t_next - t_cur) + s+
      std::vector<LpTerm> hi{{p, 1.0},
                             {time_col(pos + 1), -job.p_max},
                             {time_col(pos), job.p_max}};
      if (slack) {
        const int sl = lp.add_column(tag("sl_", j, i), 0.0, kInfinity, weights.bound);
        const int su = lp.add_column(tag("su_", j, i), 0.0, kInfinity, weights.bound);
        out.slack_lower_column[key] = sl;
        out.slack_upper_column[key] = su;
        lo.push_back({sl, 1.0});
        hi.push_back({su, -1.0});
      }
      lp.add_row(tag("lower_", j, i), std::move(lo), RowSense::kGreaterEqual, 0.0);
      lp.add_row(tag("upper_", j, i), std::move(hi), RowSense::kLessEqual, 0.0);
    }
    lp.add_row(tag("energy_", j), std::move(energy), RowSense::kEqual, job.e_total);
  }

  // Σ_j p_{j,i} <= P(t_next - t_cur) + s^t_i
  for (int pos = 1; pos < 2 * n; ++pos) {
    const EventId opening = order.at(pos);
    std::vector<LpTerm> terms;
    for (int j = 1; j <= n; ++j) {
      auto it = out.consumption_column.find({j, opening});
      if (it != out.consumption_column.end()) terms.push_back({it->second, 1.0});
    }
    terms.push_back({time_col(pos + 1), -inst.capacity()});
    terms.push_back({time_col(pos), inst.capacity()});
    if (slack) {
      const int st = lp.add_column(tag("st_", opening.value), 0.0, kInfinity,
                                   weights.capacity);
      out.slack_capacity_column[opening] = st;
      terms.push_back({st, -1.0});
    }
    lp.add_row(tag("capacity_", opening.value), std::move(terms),
               RowSense::kLessEqual, 0.0);
  }
  return out;
}

LpSolution solve_schedule_lp(const LinearProgram& lp) {
  return solve_lp(lp);
}

Evaluation score_order(const Instance& inst, const EventOrder& order,
                       const PenaltyWeights& weights, SlackMode mode) {
  const ScheduleLp model = build_schedule_lp(inst, order, weights, mode);
  const LpSolution sol = solve_schedule_lp(model.program);
  Evaluation eval;
  eval.lp_iterations = sol.iterations;
  if (sol.status == LpStatus::kInfeasible) return eval;
  if (sol.status != LpStatus::kOptimal) {
    throw SolverError(std::string("schedule LP ") + to_string(sol.status) +
                      " for order " + to_string(order));
  }
  auto read = [&](int col) { return std::max(0.0, sol.values[col]); };
  Schedule sched;
  sched.order = order;
  sched.times.resize(2 * inst.num_jobs());
  for (std::size_t k = 0; k < sched.times.size(); ++k) {
    sched.times[k] = sol.values[model.time_column[k]];
  }
  for (const auto& [key, col] : model.consumption_column) {
    sched.consumption[key] = read(col);
    sched.slack_lower[key] = 0.0;
    sched.slack_upper[key] = 0.0;
  }
  for (const auto& [key, col] : model.slack_lower_column) sched.slack_lower[key] = read(col);
  for (const auto& [key, col] : model.slack_upper_column) sched.slack_upper[key] = read(col);
  for (int pos = 1; pos < order.size(); ++pos) {
    sched.slack_capacity[order.at(pos)] = 0.0;
  }
  for (const auto& [event, col] : model.slack_capacity_column) {
    sched.slack_capacity[event] = read(col);
  }
  sched.score = sol.objective;
  eval.score = sol.objective;
  eval.schedule = std::move(sched);
  return eval;
}

double completion_lower_bound(const Instance& inst) {
  double bound = 0;
  for (const Job& job : inst.jobs()) {
    bound += job.cost(job.release + job.min_processing_time());
  }
  return bound;
}

}  // namespace cecsp
