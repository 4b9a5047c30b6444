// Shared instances and helpers for the test suites.

#ifndef CECSP_TESTS_FIXTURES_HPP
#define CECSP_TESTS_FIXTURES_HPP

#include <random>
#include <vector>

#include "cecsp/core.hpp"
#include "cecsp/generator.hpp"

namespace cecsp::testing {

// Three-job example: P = 50.
inline Instance three_job_example() {
  return Instance(50, {{70, 0.0, 3.0, 10, 30, 1.0, 0},
                       {20, 1.5, 3.0, 10, 40, 3.5, 0},
                       {45, 2.5, 4.0, 10, 50, 5.0, 0}});
}

// Values computed by tests/oracles/three_job_oracle.py (scipy/HiGHS over all
// 90 orders).
inline constexpr double kExampleOptimum = 27.1666666667;
inline constexpr int kExampleFeasibleOrders = 11;
inline EventOrder example_optimal_order() { return EventOrder::from_ids({1, 3, 4, 5, 2, 6}); }

inline Instance single_job() { return Instance(10, {{10, 0, 10, 0, 10, 1, 0}}); }

// Two jobs that each need the whole capacity of [0,1].
inline Instance overloaded() {
  return Instance(100, {{100, 0, 1, 0, 100, 1, 0}, {100, 0, 1, 0, 100, 1, 0}});
}

inline Instance generated(int n, std::uint64_t seed, double capacity = 50,
                          bool adversarial = false) {
  GenConfig cfg = GenConfig::preset(n, capacity, adversarial);
  cfg.seed = seed;
  return generate_instance(cfg);
}

// Uniformly shuffled events, repaired so every start precedes its completion.
inline EventOrder random_order(int n, std::mt19937_64& rng) {
  std::vector<int> ids(2 * n);
  for (int k = 0; k < 2 * n; ++k) ids[k] = k + 1;
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<int> seen(n + 1, 0);
  for (int& id : ids) {
    const int job = (id + 1) / 2;
    id = seen[job]++ == 0 ? 2 * job - 1 : 2 * job;
  }
  return EventOrder::from_ids(ids);
}

}  // namespace cecsp::testing

#endif  // CECSP_TESTS_FIXTURES_HPP
