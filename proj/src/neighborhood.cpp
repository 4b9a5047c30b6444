#include <algorithm>
#include <stdexcept>

#include "cecsp/search.hpp"

namespace cecsp {

MoveRange movement_range(const EventOrder& order, const PrecedenceSet& prec,
                         int pos, EventId skip) {
  const EventId event = order.at(pos);
  MoveRange range;
  for (int k = pos - 1; k >= 1; --k) {
    const EventId other = order.at(k);
    if (other == skip) continue;
    if (prec.related(event, other)) break;
    ++range.left;
  }
  for (int k = pos + 1; k <= order.size(); ++k) {
    const EventId other = order.at(k);
    if (other == skip) continue;
    if (prec.related(event, other)) break;
    ++range.right;
  }
  return range;
}

std::optional<EventOrder> op_swap_adjacent(const EventOrder& order,
                                           const PrecedenceSet& prec, int pos) {
  if (pos < 1 || pos >= order.size()) {
    throw std::out_of_range("swap position out of range");
  }
  if (prec.contains(order.at(pos), order.at(pos + 1))) return std::nullopt;
  std::vector<EventId> seq = order.sequence();
  std::swap(seq[pos - 1], seq[pos]);
  return EventOrder(std::move(seq));
}

std::optional<EventOrder> op_move_single(const EventOrder& order,
                                         const PrecedenceSet& prec, int pos,
                                         Rng& rng) {
  if (pos < 1 || pos > order.size()) {
    throw std::out_of_range("move position out of range");
  }
  const MoveRange range = movement_range(order, prec, pos);
  if (range.left == 0 && range.right == 0) return std::nullopt;

  // Displacement d != 0 is drawn with weight 1/|d|.
  double total = 0;
  for (int d = 1; d <= range.left; ++d) total += 1.0 / d;
  for (int d = 1; d <= range.right; ++d) total += 1.0 / d;
  double u = std::uniform_real_distribution<double>(0.0, total)(rng);
  int shift = 0;
  for (int d = -range.left; d <= range.right && shift == 0; ++d) {
    if (d == 0) continue;
    u -= 1.0 / std::abs(d);
    if (u < 0) shift = d;
  }
  if (shift == 0) shift = range.right > 0 ? range.right : -1;

  std::vector<EventId> seq = order.sequence();
  auto from = seq.begin() + (pos - 1);
  if (shift > 0) {
    std::rotate(from, from + 1, from + shift + 1);
  } else {
    std::rotate(from + shift, from, from + 1);
  }
  return EventOrder(std::move(seq));
}

std::optional<EventOrder> op_move_pair(const EventOrder& order,
                                       const PrecedenceSet& prec, int job,
                                       Rng& rng) {
  if (job < 1 || job > order.num_jobs()) {
    throw std::out_of_range("job out of range");
  }
  const EventId start = EventId::start_of(job);
  const EventId completion = EventId::completion_of(job);
  const int ps = order.position(start);
  const int pc = order.position(completion);
  // Each event steps over its partner, which moves along with it.
  const MoveRange rs = movement_range(order, prec, ps, completion);
  const MoveRange rc = movement_range(order, prec, pc, start);
  const int left = std::min(rs.left, rc.left);
  const int right = std::min(rs.right, rc.right);
  if (left == 0 && right == 0) return std::nullopt;

  int shift = std::uniform_int_distribution<int>(-left, right - 1)(rng);
  if (shift >= 0) ++shift;

  std::vector<EventId> rest;
  for (EventId id : order.sequence()) {
    if (id != start && id != completion) rest.push_back(id);
  }
  std::vector<EventId> seq(order.size());
  seq[ps + shift - 1] = start;
  seq[pc + shift - 1] = completion;
  auto next = rest.begin();
  for (EventId& slot : seq) {
    if (slot.value == 0) slot = *next++;
  }
  return EventOrder(std::move(seq));
}

}  // namespace cecsp
