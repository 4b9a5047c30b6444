#include "cecsp/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cecsp {

void validate_job(const Job& job) {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("invalid job: " + what);
  };
  if (!(job.e_total > 0)) fail("resource requirement must be positive");
  if (!(job.p_min >= 0)) fail("lower bound must be nonnegative");
  if (!(job.p_min <= job.p_max)) fail("lower bound exceeds upper bound");
  if (!(job.p_max > 0)) fail("upper bound must be positive");
  if (!(job.release >= 0)) fail("release time must be nonnegative");
  if (!(job.deadline > job.release)) fail("deadline must follow release");
  if (!std::isfinite(job.weight) || !std::isfinite(job.offset)) {
    fail("cost coefficients must be finite");
  }
  // Relative slack so two-decimal files written elsewhere still load.
  const double window = job.deadline - job.release;
  if (window < job.min_processing_time() * (1 - 1e-12) - 1e-12) {
    fail("window shorter than E/P+ (trivially infeasible)");
  }
}

Instance::Instance(double capacity, std::vector<Job> jobs)
    : capacity_(capacity), jobs_(std::move(jobs)) {
  if (!(capacity_ > 0) || !std::isfinite(capacity_)) {
    throw std::invalid_argument("invalid instance: capacity must be positive");
  }
  if (jobs_.empty()) {
    throw std::invalid_argument("invalid instance: needs at least one job");
  }
  for (std::size_t k = 0; k < jobs_.size(); ++k) {
    try {
      validate_job(jobs_[k]);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("job " + std::to_string(k + 1) + ": " +
                                  e.what());
    }
  }
}

const Job& Instance::job(int j) const {
  if (j < 1 || j > num_jobs()) throw std::out_of_range("job index");
  return jobs_[j - 1];
}

double Instance::horizon() const {
  double h = 0;
  for (const Job& job : jobs_) h = std::max(h, job.deadline);
  return h;
}

double Instance::total_energy() const {
  double s = 0;
  for (const Job& job : jobs_) s += job.e_total;
  return s;
}

double Instance::total_offset() const {
  double s = 0;
  for (const Job& job : jobs_) s += job.offset;
  return s;
}

EventId start_event(int job, int num_jobs) {
  if (job < 1 || job > num_jobs) throw std::out_of_range("job index");
  return EventId::start_of(job);
}

EventId completion_event(int job, int num_jobs) {
  if (job < 1 || job > num_jobs) throw std::out_of_range("job index");
  return EventId::completion_of(job);
}

EventRole job_of(EventId id, int num_jobs) {
  if (id.value < 1 || id.value > 2 * num_jobs) {
    throw std::out_of_range("event id");
  }
  return {id.job(), id.is_start()};
}

EventOrder::EventOrder(std::vector<EventId> sequence)
    : sequence_(std::move(sequence)) {
  const int size = static_cast<int>(sequence_.size());
  if (size == 0 || size % 2 != 0) {
    throw std::invalid_argument("event order must hold 2n events");
  }
  position_.assign(size, 0);
  for (int pos = 1; pos <= size; ++pos) {
    const EventId id = sequence_[pos - 1];
    if (id.value < 1 || id.value > size || position_[id.index()] != 0) {
      throw std::invalid_argument("event order is not a permutation");
    }
    position_[id.index()] = pos;
  }
  for (int j = 1; j <= size / 2; ++j) {
    if (position(EventId::start_of(j)) > position(EventId::completion_of(j))) {
      throw std::invalid_argument("job " + std::to_string(j) +
                                  " completes before it starts");
    }
  }
}

EventOrder EventOrder::from_ids(const std::vector<int>& ids) {
  std::vector<EventId> seq;
  seq.reserve(ids.size());
  for (int v : ids) seq.push_back(EventId{v});
  return EventOrder(std::move(seq));
}

std::vector<int> EventOrder::ids() const {
  std::vector<int> out;
  out.reserve(sequence_.size());
  for (EventId id : sequence_) out.push_back(id.value);
  return out;
}

std::string to_string(const EventOrder& order) {
  std::ostringstream os;
  for (int pos = 1; pos <= order.size(); ++pos) {
    const EventId id = order.at(pos);
    if (pos > 1) os << ' ';
    os << (id.is_start() ? 'S' : 'C') << id.job();
  }
  return os.str();
}

PrecedenceSet::PrecedenceSet(int num_jobs)
    : num_events_(2 * num_jobs),
      before_(static_cast<std::size_t>(num_events_) * num_events_, 0) {}

PrecedenceSet PrecedenceSet::job_pairs(int num_jobs) {
  PrecedenceSet prec(num_jobs);
  for (int j = 1; j <= num_jobs; ++j) {
    prec.add(EventId::start_of(j), EventId::completion_of(j));
  }
  return prec;
}

void PrecedenceSet::add(EventId before, EventId after) {
  if (before == after) throw std::invalid_argument("reflexive precedence");
  char& cell = before_[before.index() * num_events_ + after.index()];
  if (!cell) {
    cell = 1;
    ++count_;
  }
}

std::vector<std::pair<EventId, EventId>> PrecedenceSet::pairs() const {
  std::vector<std::pair<EventId, EventId>> out;
  for (int a = 1; a <= num_events_; ++a) {
    for (int b = 1; b <= num_events_; ++b) {
      if (contains({a}, {b})) out.emplace_back(EventId{a}, EventId{b});
    }
  }
  return out;
}

bool PrecedenceSet::is_acyclic() const {
  // Kahn's algorithm.
  std::vector<int> indegree(num_events_, 0);
  for (int a = 0; a < num_events_; ++a) {
    for (int b = 0; b < num_events_; ++b) {
      if (before_[a * num_events_ + b]) ++indegree[b];
    }
  }
  std::vector<int> ready;
  for (int v = 0; v < num_events_; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  int seen = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++seen;
    for (int b = 0; b < num_events_; ++b) {
      if (before_[v * num_events_ + b] && --indegree[b] == 0) {
        ready.push_back(b);
      }
    }
  }
  return seen == num_events_;
}

bool PrecedenceSet::respected_by(const EventOrder& order) const {
  for (auto [a, b] : pairs()) {
    if (order.position(a) > order.position(b)) return false;
  }
  return true;
}

PrecedenceSet implicit_precedences(const Instance& inst) {
  const int n = inst.num_jobs();
  PrecedenceSet prec = PrecedenceSet::job_pairs(n);
  std::vector<double> earliest(2 * n), latest(2 * n);
  for (int j = 1; j <= n; ++j) {
    const Job& job = inst.job(j);
    const double u = job.min_processing_time();
    earliest[EventId::start_of(j).index()] = job.release;
    latest[EventId::start_of(j).index()] = job.deadline - u;
    earliest[EventId::completion_of(j).index()] = job.release + u;
    latest[EventId::completion_of(j).index()] = job.deadline;
  }
  for (int a = 1; a <= 2 * n; ++a) {
    for (int b = 1; b <= 2 * n; ++b) {
      if (a != b && latest[a - 1] < earliest[b - 1]) {
        prec.add(EventId{a}, EventId{b});
      }
    }
  }
  return prec;
}

double Schedule::max_slack() const {
  double m = 0;
  for (const auto& [key, v] : slack_lower) m = std::max(m, v);
  for (const auto& [key, v] : slack_upper) m = std::max(m, v);
  for (const auto& [key, v] : slack_capacity) m = std::max(m, v);
  return m;
}

std::vector<IntervalKey> window_keys(const EventOrder& order, int job) {
  std::vector<IntervalKey> keys;
  const int first = order.position(EventId::start_of(job));
  const int last = order.position(EventId::completion_of(job));
  for (int pos = first; pos < last; ++pos) keys.push_back({job, order.at(pos)});
  return keys;
}

double schedule_cost(const Instance& inst, const Schedule& sched) {
  double cost = 0;
  for (int j = 1; j <= inst.num_jobs(); ++j) {
    cost += inst.job(j).cost(sched.time(EventId::completion_of(j)));
  }
  return cost;
}

const char* constraint_label(Constraint c) {
  switch (c) {
    case Constraint::kTotalEnergy: return "total_energy";
    case Constraint::kRelease: return "release";
    case Constraint::kDeadline: return "deadline";
    case Constraint::kWindow: return "window";
    case Constraint::kRateBounds: return "rate_bounds";
    case Constraint::kCapacity: return "capacity";
  }
  return "?";
}

double ValidationReport::max_violation() const {
  double m = 0;
  for (const auto& list : violations) {
    for (const Violation& v : list) m = std::max(m, v.magnitude);
  }
  return m;
}

ValidationReport validate_schedule(const Instance& inst,
                                   const EventOrder& order,
                                   const Schedule& sched, double tol) {
  const int n = inst.num_jobs();
  if (order.num_jobs() != n ||
      static_cast<int>(sched.times.size()) != 2 * n) {
    throw std::invalid_argument("schedule size does not match instance");
  }
  std::size_t expected_keys = 0;
  for (int j = 1; j <= n; ++j) {
    for (const IntervalKey& key : window_keys(order, j)) {
      if (!sched.consumption.contains(key)) {
        throw std::invalid_argument(
            "missing consumption for job " + std::to_string(j) +
            " in interval " + std::to_string(key.opening.value));
      }
      ++expected_keys;
    }
  }
  if (sched.consumption.size() != expected_keys) {
    throw std::invalid_argument(
        "consumption defined outside a job's processing window");
  }

  ValidationReport report;
  report.tolerance = tol;
  auto record = [&](Constraint c, int job, EventId interval, double mag) {
    if (mag > 0) {
      report.violations[static_cast<int>(c)].push_back({job, interval, mag});
    }
  };

  for (int pos = 1; pos < order.size(); ++pos) {
    const double back =
        sched.time(order.at(pos)) - sched.time(order.at(pos + 1));
    record(Constraint::kWindow, 0, order.at(pos), back);
  }
  for (int j = 1; j <= n; ++j) {
    const Job& job = inst.job(j);
    double total = 0;
    for (const IntervalKey& key : window_keys(order, j)) {
      const double amount = sched.consumption.at(key);
      total += amount;
      const int pos = order.position(key.opening);
      const double dt =
          sched.time(order.at(pos + 1)) - sched.time(order.at(pos));
      record(Constraint::kRateBounds, j, key.opening, -amount);
      record(Constraint::kRateBounds, j, key.opening,
             amount - job.p_max * dt);
      if (dt > tol) {
        record(Constraint::kRateBounds, j, key.opening,
               job.p_min * dt - amount);
      }
    }
    record(Constraint::kTotalEnergy, j, {}, std::abs(total - job.e_total));
    record(Constraint::kRelease, j, {},
           job.release - sched.time(EventId::start_of(j)));
    record(Constraint::kDeadline, j, {},
           sched.time(EventId::completion_of(j)) - job.deadline);
  }
  for (int pos = 1; pos < order.size(); ++pos) {
    const EventId opening = order.at(pos);
    const double dt = sched.time(order.at(pos + 1)) - sched.time(opening);
    double used = 0;
    for (int j = 1; j <= n; ++j) {
      auto it = sched.consumption.find({j, opening});
      if (it != sched.consumption.end()) used += it->second;
    }
    record(Constraint::kCapacity, 0, opening, used - inst.capacity() * dt);
  }
  report.is_feasible = report.max_violation() <= tol;
  return report;
}

Schedule piecewise_constant_average(const Instance& inst,
                                    const FineProfile& profile) {
  const int n = inst.num_jobs();
  Schedule out;
  out.order = profile.order;
  out.times = profile.times;
  const auto& grid = profile.breakpoints;
  // Integral of job j's rate over [from, to].
  auto integral = [&](int j, double from, double to) {
    double sum = 0;
    for (std::size_t s = 0; s + 1 < grid.size(); ++s) {
      const double lo = std::max(from, grid[s]);
      const double hi = std::min(to, grid[s + 1]);
      if (hi > lo) sum += profile.rates[j - 1][s] * (hi - lo);
    }
    return sum;
  };
  for (int j = 1; j <= n; ++j) {
    for (const IntervalKey& key : window_keys(profile.order, j)) {
      const int pos = profile.order.position(key.opening);
      const double from = out.time(key.opening);
      const double to = out.time(profile.order.at(pos + 1));
      out.consumption[key] = to > from ? integral(j, from, to) : 0.0;
      out.slack_lower[key] = 0;
      out.slack_upper[key] = 0;
    }
  }
  for (int pos = 1; pos < profile.order.size(); ++pos) {
    out.slack_capacity[profile.order.at(pos)] = 0;
  }
  out.score = schedule_cost(inst, out);
  return out;
}

}  // namespace cecsp
