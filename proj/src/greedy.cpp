#include <algorithm>
#include <numeric>

#include "cecsp/search.hpp"

namespace cecsp {

namespace {

constexpr double kDoneEps = 1e-9;

}  // namespace

EventOrder greedy_initial_order(const Instance& inst) {
  const int n = inst.num_jobs();
  std::vector<int> by_deadline(n);
  std::iota(by_deadline.begin(), by_deadline.end(), 1);
  std::stable_sort(by_deadline.begin(), by_deadline.end(), [&](int a, int b) {
    return inst.job(a).deadline < inst.job(b).deadline;
  });

  std::vector<double> marks;
  for (const Job& job : inst.jobs()) {
    marks.push_back(job.release);
    marks.push_back(job.deadline);
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  std::vector<double> remaining(n + 1);
  for (int j = 1; j <= n; ++j) remaining[j] = inst.job(j).e_total;
  std::vector<char> started(n + 1, 0), completed(n + 1, 0);
  std::vector<EventId> sequence;

  auto grant = [&](int j, double amount) {
    if (amount <= 0) return;
    remaining[j] -= amount;
    if (!started[j]) {
      started[j] = 1;
      sequence.push_back(EventId::start_of(j));
    }
    if (remaining[j] <= kDoneEps && !completed[j]) {
      completed[j] = 1;
      sequence.push_back(EventId::completion_of(j));
    }
  };

  for (std::size_t k = 0; k + 1 < marks.size(); ++k) {
    const double t_start = marks[k];
    const double t_end = marks[k + 1];
    const double span = t_end - t_start;
    std::vector<int> available;
    for (int j : by_deadline) {
      const Job& job = inst.job(j);
      if (job.release <= t_start && job.deadline >= t_end && !completed[j]) {
        available.push_back(j);
      }
    }
    // Step 1: what each job needs now to still meet its deadline at full rate.
    std::vector<double> got(n + 1, 0.0);
    double assigned = 0;
    for (int j : available) {
      const Job& job = inst.job(j);
      const double need =
          std::min(remaining[j],
                   std::max(0.0, remaining[j] - (job.deadline - t_end) * job.p_max));
      got[j] = need;
      assigned += need;
      grant(j, need);
    }
    const double budget = span * inst.capacity();
    if (assigned > budget) continue;
    // Step 2: fill the rest of the period by increasing deadline.
    double left = budget - assigned;
    for (int j : available) {
      if (left <= 0) break;
      const double amount =
          std::min({remaining[j], inst.job(j).p_max * span - got[j], left});
      if (amount <= 0) continue;
      left -= amount;
      grant(j, amount);
    }
  }

  for (int j : by_deadline) {
    if (!started[j]) sequence.push_back(EventId::start_of(j));
    if (!completed[j]) sequence.push_back(EventId::completion_of(j));
  }
  return EventOrder(std::move(sequence));
}

}  // namespace cecsp
