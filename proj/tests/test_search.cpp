#include <algorithm>
#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "cecsp/error.hpp"
#include "cecsp/search.hpp"
#include "fixtures.hpp"

namespace cecsp {
namespace {

using testing::three_job_example;

std::vector<EventId> without_job(const EventOrder& order, int job) {
  std::vector<EventId> rest;
  for (EventId id : order.sequence()) {
    if (id.job() != job) rest.push_back(id);
  }
  return rest;
}

TEST(Greedy, ThreeJobExample) {
  EXPECT_EQ(greedy_initial_order(three_job_example()), EventOrder::from_ids({1, 2, 3, 4, 5, 6}));
}

TEST(Greedy, SingleJob) {
  EXPECT_EQ(greedy_initial_order(testing::single_job()), EventOrder::from_ids({1, 2}));
}

TEST(Greedy, DisjointWindowsFollowTime) {
  const Instance inst(10, {{5, 4, 6, 0, 10, 1, 0}, {5, 0, 2, 0, 10, 1, 0}, {5, 8, 9, 0, 10, 1, 0}});
  EXPECT_EQ(greedy_initial_order(inst), EventOrder::from_ids({3, 4, 1, 2, 5, 6}));
}

TEST(Greedy, UnfinishedJobsAppendedByDeadline) {
  // Neither job can finish inside its window; both still get both events.
  const Instance inst(1, {{100, 0, 2, 0, 100, 1, 0}, {100, 0, 1, 0, 100, 1, 0}});
  const EventOrder order = greedy_initial_order(inst);
  EXPECT_EQ(order.size(), 4);
}

TEST(Greedy, GeneratedInstancesGiveValidOrders) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = testing::generated(8, seed, seed % 2 ? 50 : 30, seed % 3 == 0);
    EXPECT_EQ(greedy_initial_order(inst).num_jobs(), 8);
  }
}

TEST(MovementRange, ByHand) {
  const PrecedenceSet prec = PrecedenceSet::job_pairs(3);
  const EventOrder order = EventOrder::from_ids({1, 3, 5, 2, 4, 6});
  const MoveRange r = movement_range(order, prec, 3);  // event 5
  EXPECT_EQ(r.left, 2);
  EXPECT_EQ(r.right, 2);
  const MoveRange first = movement_range(order, prec, 1);  // event 1, blocked by 2
  EXPECT_EQ(first.left, 0);
  EXPECT_EQ(first.right, 2);
  const MoveRange skipped = movement_range(order, prec, 1, EventId{3});
  EXPECT_EQ(skipped.right, 1);
}

TEST(SwapAdjacent, InvolutionAndRejection) {
  const PrecedenceSet prec = PrecedenceSet::job_pairs(3);
  const EventOrder order = EventOrder::from_ids({1, 3, 2, 5, 4, 6});
  for (int pos = 1; pos < order.size(); ++pos) {
    const auto once = op_swap_adjacent(order, prec, pos);
    if (prec.contains(order.at(pos), order.at(pos + 1))) {
      EXPECT_FALSE(once) << pos;
      continue;
    }
    ASSERT_TRUE(once) << pos;
    EXPECT_EQ(once->at(pos), order.at(pos + 1));
    const auto twice = op_swap_adjacent(*once, prec, pos);
    ASSERT_TRUE(twice);
    EXPECT_EQ(*twice, order);
  }
  EXPECT_FALSE(op_swap_adjacent(EventOrder::from_ids({1, 2, 3, 4}), PrecedenceSet::job_pairs(2), 1));
  EXPECT_THROW(op_swap_adjacent(order, prec, 6), std::out_of_range);
}

TEST(MoveSingle, RespectsPrecedencesAndMovesOneEvent) {
  Rng rng(4);
  const Instance inst = testing::generated(6, 8);
  const PrecedenceSet prec = implicit_precedences(inst);
  std::mt19937_64 shuffle(1);
  int moved = 0;
  for (int trial = 0; trial < 300; ++trial) {
    EventOrder order = testing::random_order(6, shuffle);
    if (!prec.respected_by(order)) continue;
    const int pos = 1 + trial % 12;
    const auto out = op_move_single(order, prec, pos, rng);
    const MoveRange range = movement_range(order, prec, pos);
    if (!out) {
      EXPECT_EQ(range.left + range.right, 0);
      continue;
    }
    ++moved;
    EXPECT_TRUE(prec.respected_by(*out));
    const EventId e = order.at(pos);
    const int shift = out->position(e) - pos;
    EXPECT_NE(shift, 0);
    EXPECT_GE(shift, -range.left);
    EXPECT_LE(shift, range.right);
    std::vector<EventId> a = order.sequence(), b = out->sequence();
    a.erase(std::find(a.begin(), a.end(), e));
    b.erase(std::find(b.begin(), b.end(), e));
    EXPECT_EQ(a, b);
  }
  EXPECT_GT(moved, 20);
}

TEST(MoveSingle, DisplacementWeightedByInverseDistance) {
  const PrecedenceSet prec = PrecedenceSet::job_pairs(3);
  const EventOrder order = EventOrder::from_ids({1, 3, 5, 2, 4, 6});
  Rng rng(99);
  std::map<int, int> counts;
  const int draws = 30000;
  for (int k = 0; k < draws; ++k) {
    const auto out = op_move_single(order, prec, 3, rng);
    ASSERT_TRUE(out);
    ++counts[out->position(EventId{5}) - 3];
  }
  // d in {-2,-1,1,2} with weights 1/2, 1, 1, 1/2.
  const std::map<int, double> expected{{-2, 1.0 / 6}, {-1, 1.0 / 3}, {1, 1.0 / 3}, {2, 1.0 / 6}};
  ASSERT_EQ(counts.size(), 4u);
  for (const auto& [d, p] : expected) {
    EXPECT_NEAR(counts[d] / static_cast<double>(draws), p, 0.015) << d;
  }
}

TEST(MoveSingle, BlockedEventIsRejected) {
  const PrecedenceSet prec = PrecedenceSet::job_pairs(1);
  Rng rng(1);
  EXPECT_FALSE(op_move_single(EventOrder::from_ids({1, 2}), prec, 1, rng));
}

TEST(MovePair, ShiftsBothEventsTogether) {
  Rng rng(12);
  const PrecedenceSet prec = PrecedenceSet::job_pairs(4);
  std::mt19937_64 shuffle(2);
  for (int trial = 0; trial < 200; ++trial) {
    const EventOrder order = testing::random_order(4, shuffle);
    const int job = 1 + trial % 4;
    const auto out = op_move_pair(order, prec, job, rng);
    const EventId s = EventId::start_of(job), c = EventId::completion_of(job);
    if (!out) continue;
    const int shift = out->position(s) - order.position(s);
    EXPECT_NE(shift, 0);
    EXPECT_EQ(out->position(c) - order.position(c), shift);
    EXPECT_EQ(without_job(*out, job), without_job(order, job));
  }
}

TEST(MovePair, UniformShiftAndInverse) {
  // Job 2 sits in the middle with two free events on each side.
  const PrecedenceSet prec = PrecedenceSet::job_pairs(3);
  const EventOrder order = EventOrder::from_ids({1, 5, 3, 4, 2, 6});
  Rng rng(5);
  std::map<int, int> counts;
  for (int k = 0; k < 4000; ++k) {
    const auto out = op_move_pair(order, prec, 2, rng);
    ASSERT_TRUE(out);
    const int shift = out->position(EventId{3}) - 3;
    ++counts[shift];
    // Moving back by the opposite shift is always possible.
    if (shift == 1) {
      EXPECT_EQ(*out, EventOrder::from_ids({1, 5, 2, 3, 4, 6}));
    } else if (shift == -1) {
      EXPECT_EQ(*out, EventOrder::from_ids({1, 3, 4, 5, 2, 6}));
    }
  }
  // Left: 5 and 1 are free for job 2. Right: 2 then 6.
  const MoveRange rs = movement_range(order, prec, 3, EventId{4});
  const MoveRange rc = movement_range(order, prec, 4, EventId{3});
  const int left = std::min(rs.left, rc.left), right = std::min(rs.right, rc.right);
  EXPECT_EQ(left, 2);
  EXPECT_EQ(right, 2);
  ASSERT_EQ(counts.size(), 4u);
  for (const auto& [shift, count] : counts) EXPECT_NEAR(count / 4000.0, 0.25, 0.03) << shift;
}

TEST(MovePair, PlusOneThenMinusOneRestores) {
  const PrecedenceSet prec = PrecedenceSet::job_pairs(3);
  const EventOrder order = EventOrder::from_ids({1, 5, 3, 4, 2, 6});
  Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    const auto out = op_move_pair(order, prec, 2, rng);
    ASSERT_TRUE(out);
    if (out->position(EventId{3}) - 3 != 1) continue;
    bool restored = false;
    for (int tries = 0; tries < 200 && !restored; ++tries) {
      const auto back = op_move_pair(*out, prec, 2, rng);
      restored = back && *back == order;
    }
    EXPECT_TRUE(restored);
    return;
  }
  FAIL() << "shift +1 never drawn";
}

TEST(MovePair, RejectedWhenBlocked) {
  Rng rng(3);
  const PrecedenceSet prec = PrecedenceSet::job_pairs(1);
  EXPECT_FALSE(op_move_pair(EventOrder::from_ids({1, 2}), prec, 1, rng));
  EXPECT_THROW(op_move_pair(EventOrder::from_ids({1, 2}), prec, 2, rng), std::out_of_range);
}

TEST(SAConfig, Defaults) {
  const SAConfig c = SAConfig::defaults_for(10);
  EXPECT_EQ(c.t_init, 10);
  EXPECT_EQ(c.alpha_period, 76);
  EXPECT_EQ(c.max_iter, 11400);
  EXPECT_FALSE(c.restart.enabled);
  EXPECT_TRUE(SAConfig::defaults_for(50).restart.enabled);
  EXPECT_EQ(SAConfig::defaults_for(2).max_iter, 5000);
  EXPECT_EQ(c.op_probs[0], 0.75);
  EXPECT_EQ(c.penalties.bound, 5.0);
  EXPECT_NO_THROW(c.validate());
}

TEST(SAConfig, ValidateRejectsBadValues) {
  SAConfig c;
  c.op_probs = {0.5, 0.2, 0.2};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SAConfig{};
  c.alpha = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = SAConfig{};
  c.max_iter = -1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(SAConfig, JsonRoundTrip) {
  SAConfig c = SAConfig::defaults_for(12);
  c.seed = 77;
  c.op_probs = {0.5, 0.3, 0.2};
  c.restart.enabled = true;
  const SAConfig back = sa_config_from_json(to_json(c), SAConfig{});
  EXPECT_EQ(to_json(back), to_json(c));

  const SAConfig partial = sa_config_from_json({{"alpha", 0.9}}, c);
  EXPECT_EQ(partial.alpha, 0.9);
  EXPECT_EQ(partial.seed, 77u);
  EXPECT_THROW(sa_config_from_json({{"alpha", "fast"}}, c), FormatError);
  EXPECT_THROW(sa_config_from_json(nlohmann::json::array(), c), FormatError);
}

TEST(Annealing, ZeroIterationsReturnsInitial) {
  const Instance inst = three_job_example();
  SAConfig c = SAConfig::defaults_for(3);
  c.max_iter = 0;
  const EventOrder init = greedy_initial_order(inst);
  const SearchResult r = simulated_annealing(inst, implicit_precedences(inst), c, init);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.evaluations, 1);
  EXPECT_EQ(r.best_order, init);
  EXPECT_EQ(r.best_score, r.initial_score);
}

TEST(Annealing, SingleJobTerminatesImmediately) {
  const Instance inst = testing::single_job();
  SAConfig c = SAConfig::defaults_for(1);
  c.restart.enabled = true;
  const SearchResult r =
      simulated_annealing(inst, implicit_precedences(inst), c, EventOrder::from_ids({1, 2}));
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.restarts, 0);
  EXPECT_TRUE(r.feasible);
  EXPECT_NEAR(r.reported().score, 1.0, 1e-9);
}

TEST(Annealing, FindsExampleOptimum) {
  const Instance inst = three_job_example();
  const SearchResult r = simulated_annealing(inst, implicit_precedences(inst),
                                             SAConfig::defaults_for(3), greedy_initial_order(inst));
  ASSERT_TRUE(r.best_feasible);
  EXPECT_NEAR(r.best_feasible->score, testing::kExampleOptimum, 1e-6);
  EXPECT_TRUE(validate_schedule(inst, r.best_feasible->order, *r.best_feasible).is_feasible);
  EXPECT_EQ(r.accepted_moves, r.iterations);
  EXPECT_LE(r.lp_solves, r.evaluations);
}

TEST(Annealing, ZeroTemperatureNeverAcceptsWorse) {
  long accepted = 0;
  for (std::uint64_t seed = 31; seed < 41; ++seed) {
    const Instance inst = testing::generated(5, seed);
    SAConfig c = SAConfig::defaults_for(5);
    c.t_init = 0;
    c.max_iter = 300;
    double last = kInfinity;
    simulated_annealing(inst, implicit_precedences(inst), c, greedy_initial_order(inst),
                        [&](const TraceEvent& e) {
                          if (e.kind == TraceKind::kCandidate) return;
                          accepted += e.kind == TraceKind::kAccepted;
                          if (std::isfinite(last)) EXPECT_LE(e.score, last + 1e-12);
                          last = e.score;
                        });
  }
  EXPECT_GT(accepted, 10);
}

TEST(Annealing, SameSeedSameRun) {
  const Instance inst = testing::generated(5, 13);
  SAConfig c = SAConfig::defaults_for(5);
  c.max_iter = 400;
  c.seed = 2024;
  const PrecedenceSet prec = implicit_precedences(inst);
  const EventOrder init = greedy_initial_order(inst);
  const SearchResult a = simulated_annealing(inst, prec, c, init);
  const SearchResult b = simulated_annealing(inst, prec, c, init);
  EXPECT_EQ(a.best_order, b.best_order);
  EXPECT_EQ(a.best_score, b.best_score);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(Annealing, TraceOrdersRespectPrecedences) {
  const Instance inst = testing::generated(6, 17);
  const PrecedenceSet prec = implicit_precedences(inst);
  SAConfig c = SAConfig::defaults_for(6);
  c.max_iter = 300;
  EventOrder init = greedy_initial_order(inst);
  if (!prec.respected_by(init)) GTEST_SKIP() << "greedy order breaks a window precedence";
  long traced = 0, accepted = 0;
  simulated_annealing(inst, prec, c, init, [&](const TraceEvent& e) {
    ++traced;
    accepted += e.kind == TraceKind::kAccepted;
    EXPECT_TRUE(prec.respected_by(e.order));
    for (int j = 1; j <= 6; ++j) {
      EXPECT_LT(e.order.position(EventId::start_of(j)), e.order.position(EventId::completion_of(j)));
    }
  });
  EXPECT_EQ(accepted, 300);
  EXPECT_GT(traced, accepted);
}

TEST(Annealing, TemperatureDecaysPerPeriod) {
  const Instance inst = testing::generated(3, 5);
  SAConfig c = SAConfig::defaults_for(3);
  c.max_iter = 60;
  c.alpha = 0.5;
  c.alpha_period = 10;
  simulated_annealing(inst, implicit_precedences(inst), c, greedy_initial_order(inst),
                      [&](const TraceEvent& e) {
                        if (e.kind != TraceKind::kAccepted) return;
                        // e.iteration counts acceptances before this one.
                        const double expected = c.t_init * std::pow(0.5, e.iteration / 10);
                        EXPECT_DOUBLE_EQ(e.temperature, expected) << e.iteration;
                      });
}

TEST(Annealing, RestartsFromLocalMinimum) {
  // Hill-climbing on a tiny instance quickly runs out of improving moves.
  const Instance inst = three_job_example();
  SAConfig c = SAConfig::defaults_for(3);
  c.t_init = 0;
  c.max_iter = 200;
  c.restart.enabled = true;
  c.restart.n_random_swaps = 3;
  c.restart.min_wall_seconds = 1e9;
  int traced_restarts = 0;
  const SearchResult r = simulated_annealing(
      inst, PrecedenceSet::job_pairs(3), c, EventOrder::from_ids({1, 2, 3, 4, 5, 6}),
      [&](const TraceEvent& e) { traced_restarts += e.kind == TraceKind::kRestart; });
  EXPECT_GT(r.restarts, 0);
  EXPECT_EQ(traced_restarts, r.restarts);

  c.restart.min_wall_seconds = 0;
  const SearchResult none = simulated_annealing(inst, PrecedenceSet::job_pairs(3), c,
                                                EventOrder::from_ids({1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(none.restarts, 0);
}

TEST(Annealing, RejectsMismatchedInitialOrder) {
  EXPECT_THROW(simulated_annealing(three_job_example(), PrecedenceSet::job_pairs(3), SAConfig{},
                                   EventOrder::from_ids({1, 2})),
               std::invalid_argument);
}

}  // namespace
}  // namespace cecsp
