#include <algorithm>
#include <exception>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "cecsp/evaluator.hpp"
#include "cecsp/exact.hpp"

namespace cecsp {

const char* to_string(ExactStatus status) {
  switch (status) {
    case ExactStatus::kOptimal: return "optimal";
    case ExactStatus::kInfeasible: return "infeasible";
    case ExactStatus::kNotRun: return "not-run";
  }
  return "unknown";
}

namespace {

// Depth-first walk over linear extensions in lexicographic order of event
// ids. An event is available once all of its predecessors are placed.
class Extensions {
 public:
  explicit Extensions(const PrecedenceSet& prec)
      : events_(prec.num_events()),
        successors_(events_),
        waiting_(events_, 0),
        placed_(events_, 0) {
    for (int a = 1; a <= events_; ++a) {
      for (int b = 1; b <= events_; ++b) {
        if (a != b && prec.contains(EventId{a}, EventId{b})) {
          successors_[a - 1].push_back(b);
          ++waiting_[b - 1];
        }
      }
    }
  }

  int num_events() const { return events_; }
  const std::vector<EventId>& prefix() const { return sequence_; }

  bool available(int v) const { return !placed_[v - 1] && waiting_[v - 1] == 0; }

  void place(int v) {
    placed_[v - 1] = 1;
    for (int s : successors_[v - 1]) --waiting_[s - 1];
    sequence_.push_back(EventId{v});
  }

  void unplace() {
    const int v = sequence_.back().value;
    sequence_.pop_back();
    for (int s : successors_[v - 1]) ++waiting_[s - 1];
    placed_[v - 1] = 0;
  }

  // Calls visit(sequence) for every completion of the current prefix.
  template <class Visit>
  void walk(Visit&& visit) {
    if (static_cast<int>(sequence_.size()) == events_) {
      visit(sequence_);
      return;
    }
    for (int v = 1; v <= events_; ++v) {
      if (!available(v)) continue;
      place(v);
      walk(visit);
      unplace();
    }
  }

  // All valid prefixes of length `depth`, in lexicographic order.
  void prefixes(int depth, std::vector<std::vector<EventId>>& out) {
    if (static_cast<int>(sequence_.size()) == depth) {
      out.push_back(sequence_);
      return;
    }
    for (int v = 1; v <= events_; ++v) {
      if (!available(v)) continue;
      place(v);
      prefixes(depth, out);
      unplace();
    }
  }

 private:
  int events_;
  std::vector<std::vector<int>> successors_;
  std::vector<int> waiting_;
  std::vector<char> placed_;
  std::vector<EventId> sequence_;
};

void check_guard(const Instance& inst, const PrecedenceSet& prec,
                 const EnumerationOptions& opts) {
  if (inst.num_jobs() > opts.max_jobs) {
    throw std::invalid_argument("enumeration refused: n = " +
                                std::to_string(inst.num_jobs()) + " exceeds " +
                                std::to_string(opts.max_jobs));
  }
  if (prec.num_events() != inst.num_events()) {
    throw std::invalid_argument("precedence set does not match instance size");
  }
  for (int j = 1; j <= inst.num_jobs(); ++j) {
    if (!prec.contains(EventId::start_of(j), EventId::completion_of(j))) {
      throw std::invalid_argument("precedence set lacks a start-before-completion pair");
    }
  }
  if (!prec.is_acyclic()) {
    throw std::invalid_argument("precedence set has a cycle");
  }
}

// Running minimum; strict comparison keeps the first (smallest) order on ties.
struct Best {
  ExactResult result;

  void offer(const Instance& inst, const std::vector<EventId>& sequence) {
    EventOrder order(sequence);
    Evaluation eval = score_order(inst, order, PenaltyWeights{}, SlackMode::kDisabled);
    ++result.explored;
    if (eval.lp_feasible() && eval.score < result.objective) {
      result.objective = eval.score;
      result.order = std::move(order);
      result.schedule = std::move(eval.schedule);
    }
  }

  void merge(ExactResult&& other) {
    result.explored += other.explored;
    if (other.order && other.objective < result.objective) {
      result.objective = other.objective;
      result.order = std::move(other.order);
      result.schedule = std::move(other.schedule);
    }
  }

  ExactResult finish() {
    result.status = result.order ? ExactStatus::kOptimal : ExactStatus::kInfeasible;
    return std::move(result);
  }
};

}  // namespace

ExactResult enumerate_exact_serial(const Instance& inst, const PrecedenceSet& prec,
                                   const EnumerationOptions& opts) {
  check_guard(inst, prec, opts);
  Extensions walker(prec);
  Best best;
  walker.walk([&](const std::vector<EventId>& seq) { best.offer(inst, seq); });
  return best.finish();
}

ExactResult enumerate_exact(const Instance& inst, const PrecedenceSet& prec,
                            const EnumerationOptions& opts) {
  check_guard(inst, prec, opts);
  const int events = inst.num_events();
  const int threads = omp_get_max_threads();

  std::vector<std::vector<EventId>> prefixes;
  if (opts.split_depth > 0) {
    Extensions(prec).prefixes(std::min(opts.split_depth, events), prefixes);
  } else {
    for (int depth = 1; depth <= events; ++depth) {
      prefixes.clear();
      Extensions(prec).prefixes(depth, prefixes);
      if (static_cast<int>(prefixes.size()) >= 8 * threads) break;
    }
  }

  const int count = static_cast<int>(prefixes.size());
  std::vector<ExactResult> partial(count);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < count; ++k) {
    try {
      Extensions walker(prec);
      for (EventId id : prefixes[k]) walker.place(id.value);
      Best best;
      walker.walk([&](const std::vector<EventId>& seq) { best.offer(inst, seq); });
      partial[k] = std::move(best.result);
    } catch (...) {
#pragma omp critical(cecsp_enumerate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  // Prefixes are in lexicographic order, so merging in index order keeps
  // the serial tie-break.
  Best best;
  for (ExactResult& r : partial) best.merge(std::move(r));
  return best.finish();
}

std::uint64_t count_linear_extensions(const PrecedenceSet& prec) {
  const int events = prec.num_events();
  if (events > 26) {
    throw std::invalid_argument("too many events to count linear extensions");
  }
  std::vector<std::uint32_t> preds(events, 0);
  for (int a = 0; a < events; ++a) {
    for (int b = 0; b < events; ++b) {
      if (a != b && prec.contains(EventId{a + 1}, EventId{b + 1})) {
        preds[b] |= 1u << a;
      }
    }
  }
  // ways[mask] = number of valid orders of the events in `mask` as a prefix.
  const std::uint32_t full = (1u << events) - 1;
  std::vector<std::uint64_t> ways(std::size_t{full} + 1, 0);
  ways[0] = 1;
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    if (ways[mask] == 0) continue;
    for (int v = 0; v < events; ++v) {
      const std::uint32_t bit = 1u << v;
      if (!(mask & bit) && (preds[v] & mask) == preds[v]) ways[mask | bit] += ways[mask];
    }
  }
  return ways[full];
}

}  // namespace cecsp
