// Random instance generation with two-decimal values and optional
// adversarial weights (nondecreasing in deadline).

#ifndef CECSP_GENERATOR_HPP
#define CECSP_GENERATOR_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cecsp/core.hpp"

namespace cecsp {

struct GenConfig {
  int n = 5;
  double capacity = 50;
  bool adversarial = false;
  double a_maxlow = 0.25;
  double a_minupp = 0.25;
  double a_rshift = 0.125;
  double a_pws = 2.0;
  std::uint64_t seed = 1;
  bool with_offsets = false;

  // Scaling parameters used in the experiments: a_pws = 2 up to n = 10,
  // 1.5 above.
  static GenConfig preset(int n, double capacity, bool adversarial = false);
  // Throws std::invalid_argument.
  void validate() const;
};

// Notes on repairs made while sampling (deadline spans that had to be
// pinned to their lower bound, rounding bumps).
using GenerationLog = std::vector<std::string>;

Instance generate_instance(const GenConfig& config, std::mt19937_64& rng,
                           GenerationLog* log = nullptr);
// Seeds a fresh generator from config.seed.
Instance generate_instance(const GenConfig& config, GenerationLog* log = nullptr);

// cecsp_n{n}_P{P}_a{0|1}_{index}.json
std::string instance_filename(const GenConfig& config, int index);

}  // namespace cecsp

#endif  // CECSP_GENERATOR_HPP
