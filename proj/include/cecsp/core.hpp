// Domain model for the continuous energy-constrained scheduling problem:
// jobs on a shared continuous resource, the event-based view of a schedule
// and its validation against the problem constraints.
//
// Indexing is 1-based throughout the public API. Job j owns the start event
// 2j-1 and the completion event 2j; positions in an event order run 1..2n.

#ifndef CECSP_CORE_HPP
#define CECSP_CORE_HPP

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cecsp {

inline constexpr double kDefaultTolerance = 1e-6;

struct Job {
  double e_total = 0;   // E_j, total resource requirement
  double release = 0;   // r_j
  double deadline = 0;  // d_j
  double p_min = 0;     // P-_j, lower bound on the consumption rate
  double p_max = 0;     // P+_j, upper bound on the consumption rate
  double weight = 0;    // w_j
  double offset = 0;    // B_j

  double min_processing_time() const { return e_total / p_max; }
  double cost(double completion) const { return weight * completion + offset; }
};

// Throws std::invalid_argument naming the broken invariant.
void validate_job(const Job& job);

class Instance {
 public:
  Instance() = default;
  // Validates every job and the capacity; throws std::invalid_argument.
  Instance(double capacity, std::vector<Job> jobs);

  double capacity() const { return capacity_; }
  int num_jobs() const { return static_cast<int>(jobs_.size()); }
  int num_events() const { return 2 * num_jobs(); }
  const std::vector<Job>& jobs() const { return jobs_; }
  // 1-based.
  const Job& job(int j) const;

  double horizon() const;  // max_j deadline
  double total_energy() const;
  double total_offset() const;

 private:
  double capacity_ = 0;
  std::vector<Job> jobs_;
};

struct EventId {
  int value = 0;

  static constexpr EventId start_of(int job) { return {2 * job - 1}; }
  static constexpr EventId completion_of(int job) { return {2 * job}; }
  constexpr int job() const { return (value + 1) / 2; }
  constexpr bool is_start() const { return value % 2 == 1; }
  constexpr int index() const { return value - 1; }  // 0-based slot

  friend constexpr auto operator<=>(EventId, EventId) = default;
};

struct EventRole {
  int job = 0;
  bool is_start = false;
  friend constexpr bool operator==(EventRole, EventRole) = default;
};

// Range-checked event numbering; throw std::out_of_range.
EventId start_event(int job, int num_jobs);
EventId completion_event(int job, int num_jobs);
EventRole job_of(EventId id, int num_jobs);

// A chronological sequence of all 2n events in which every job starts
// before it completes.
class EventOrder {
 public:
  EventOrder() = default;
  // Throws std::invalid_argument unless `sequence` is a permutation of
  // 1..2n with start-before-completion for every job.
  explicit EventOrder(std::vector<EventId> sequence);
  static EventOrder from_ids(const std::vector<int>& ids);

  int size() const { return static_cast<int>(sequence_.size()); }
  int num_jobs() const { return size() / 2; }
  // Event at 1-based position `pos`.
  EventId at(int pos) const { return sequence_[pos - 1]; }
  // 1-based position of `id`.
  int position(EventId id) const { return position_[id.index()]; }
  const std::vector<EventId>& sequence() const { return sequence_; }
  std::vector<int> ids() const;

  friend bool operator==(const EventOrder& a, const EventOrder& b) {
    return a.sequence_ == b.sequence_;
  }
  friend bool operator<(const EventOrder& a, const EventOrder& b) {
    return a.sequence_ < b.sequence_;
  }

 private:
  std::vector<EventId> sequence_;
  std::vector<int> position_;
};

std::string to_string(const EventOrder& order);

// Ordered event pairs every valid order must respect. Stored as a dense
// 2n x 2n relation since n stays small.
class PrecedenceSet {
 public:
  PrecedenceSet() = default;
  explicit PrecedenceSet(int num_jobs);

  // Only the start-before-completion pairs.
  static PrecedenceSet job_pairs(int num_jobs);

  int num_events() const { return num_events_; }
  void add(EventId before, EventId after);
  bool contains(EventId before, EventId after) const {
    return before_[before.index() * num_events_ + after.index()];
  }
  bool related(EventId a, EventId b) const {
    return contains(a, b) || contains(b, a);
  }
  std::vector<std::pair<EventId, EventId>> pairs() const;
  std::size_t size() const { return count_; }
  bool is_acyclic() const;
  bool respected_by(const EventOrder& order) const;

 private:
  int num_events_ = 0;
  std::size_t count_ = 0;
  std::vector<char> before_;
};

// Start-before-completion pairs plus pairs forced by time windows shrunk by
// the minimal processing time E_j / P+_j.
PrecedenceSet implicit_precedences(const Instance& inst);

// Consumption of `job` in the interval opened by event `opening`.
struct IntervalKey {
  int job = 0;
  EventId opening;
  friend constexpr auto operator<=>(IntervalKey, IntervalKey) = default;
};

struct Schedule {
  EventOrder order;
  std::vector<double> times;  // indexed by EventId::index()
  std::map<IntervalKey, double> consumption;
  std::map<IntervalKey, double> slack_lower;
  std::map<IntervalKey, double> slack_upper;
  std::map<EventId, double> slack_capacity;
  double score = 0;

  double time(EventId id) const { return times[id.index()]; }
  double max_slack() const;
};

// Interval keys job j owns under `order`: every opening event from its start
// up to, but excluding, its completion.
std::vector<IntervalKey> window_keys(const EventOrder& order, int job);

// Σ_j (w_j C_j + B_j) using the completion times in `sched`.
double schedule_cost(const Instance& inst, const Schedule& sched);

enum class Constraint {
  kTotalEnergy = 0,
  kRelease,
  kDeadline,
  kWindow,
  kRateBounds,
  kCapacity,
};
inline constexpr int kNumConstraints = 6;
const char* constraint_label(Constraint c);

struct Violation {
  int job = 0;        // 0 when not job-specific
  EventId interval;   // opening event, value 0 when not interval-specific
  double magnitude = 0;
};

struct ValidationReport {
  std::array<std::vector<Violation>, kNumConstraints> violations;
  double tolerance = kDefaultTolerance;
  bool is_feasible = true;

  const std::vector<Violation>& of(Constraint c) const {
    return violations[static_cast<int>(c)];
  }
  double max_violation() const;
};

// Checks every constraint against the true model; slack values are ignored.
// Throws std::invalid_argument when the consumption keys do not match the
// intervals implied by `order`.
ValidationReport validate_schedule(const Instance& inst,
                                   const EventOrder& order,
                                   const Schedule& sched,
                                   double tol = kDefaultTolerance);

// Arbitrary (not interval-constant) consumption profile that follows an
// event order: rates are piecewise constant on a grid finer than the
// event times.
struct FineProfile {
  EventOrder order;
  std::vector<double> times;        // indexed by EventId::index()
  std::vector<double> breakpoints;  // sorted, covers every event time
  std::vector<std::vector<double>> rates;  // [job-1][segment]
};

// Replaces each job's profile by its per-interval average. The result is
// the interval representation used everywhere else.
Schedule piecewise_constant_average(const Instance& inst,
                                    const FineProfile& profile);

}  // namespace cecsp

#endif  // CECSP_CORE_HPP
