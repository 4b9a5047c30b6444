#include "cecsp/generator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cecsp {

GenConfig GenConfig::preset(int n, double capacity, bool adversarial) {
  GenConfig config;
  config.n = n;
  config.capacity = capacity;
  config.adversarial = adversarial;
  config.a_pws = n <= 10 ? 2.0 : 1.5;
  return config;
}

void GenConfig::validate() const {
  auto fail = [](const char* what) { throw std::invalid_argument(what); };
  if (n < 1) fail("n must be positive");
  if (!(capacity > 0)) fail("capacity must be positive");
  if (!(a_maxlow > 0 && a_maxlow <= 1)) fail("a_maxlow must lie in (0,1]");
  if (!(a_minupp > 0 && a_minupp <= 1)) fail("a_minupp must lie in (0,1]");
  if (!(a_rshift >= 0 && a_rshift < 1)) fail("a_rshift must lie in [0,1)");
  if (!(a_pws > 0)) fail("a_pws must be positive");
}

namespace {

// Values are kept as whole hundredths while rounding to avoid drift.
long cents_nearest(double x) { return std::lround(x * 100.0); }
long cents_down(double x) { return static_cast<long>(std::floor(x * 100.0 + 1e-9)); }
long cents_up(double x) { return static_cast<long>(std::ceil(x * 100.0 - 1e-9)); }
double from_cents(long c) { return static_cast<double>(c) / 100.0; }

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::string format_number(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 4);
  return std::string(buf, res.ptr);
}

}  // namespace

Instance generate_instance(const GenConfig& config, std::mt19937_64& rng,
                           GenerationLog* log) {
  config.validate();
  const int n = config.n;
  const double cap = config.capacity;
  std::vector<Job> jobs(n);
  for (Job& job : jobs) job.e_total = from_cents(cents_nearest(uniform(rng, 10.0, 100.0)));
  const double sum_e = std::accumulate(jobs.begin(), jobs.end(), 0.0,
                                       [](double s, const Job& j) { return s + j.e_total; });
  const double scale = sum_e / cap;

  for (int j = 0; j < n; ++j) {
    Job& job = jobs[j];
    const double e = job.e_total;
    job.p_min = from_cents(cents_down(uniform(rng, 0.0, std::min(config.a_maxlow * cap,
                                                                   config.a_minupp * e))));
    job.p_max = from_cents(std::min(cents_up(uniform(rng, config.a_minupp * e, e)),
                                    cents_nearest(e)));
    const double release = std::max(
        0.0, uniform(rng, -config.a_rshift * scale, (1.0 - config.a_rshift) * scale));
    const long r_cents = cents_nearest(release);
    job.release = from_cents(r_cents);

    const double lo = e / std::min(cap, job.p_max);
    const double hi = config.a_pws * scale;
    double span;
    if (hi < lo) {
      span = lo;
      if (log) {
        log->push_back("job " + std::to_string(j + 1) + ": deadline span bound " +
                       format_fixed(hi) + " below minimum " + format_fixed(lo) +
                       ", deadline pinned to release + minimum");
      }
    } else {
      span = uniform(rng, lo, hi);
    }
    long d_cents = cents_nearest(job.release + span);
    while (from_cents(d_cents) - job.release < lo) ++d_cents;
    job.deadline = from_cents(d_cents);

    job.weight = from_cents(cents_nearest(uniform(rng, 0.0, 5.0)));
    if (config.with_offsets) job.offset = from_cents(cents_nearest(uniform(rng, 0.0, 10.0)));
  }

  if (config.adversarial) {
    std::vector<double> weights;
    for (const Job& job : jobs) weights.push_back(job.weight);
    std::sort(weights.begin(), weights.end());
    std::vector<int> rank(n);
    std::iota(rank.begin(), rank.end(), 0);
    std::stable_sort(rank.begin(), rank.end(),
                     [&](int a, int b) { return jobs[a].deadline < jobs[b].deadline; });
    for (int k = 0; k < n; ++k) jobs[rank[k]].weight = weights[k];
  }
  return Instance(cap, std::move(jobs));
}

Instance generate_instance(const GenConfig& config, GenerationLog* log) {
  std::mt19937_64 rng(config.seed);
  return generate_instance(config, rng, log);
}

std::string instance_filename(const GenConfig& config, int index) {
  return "cecsp_n" + std::to_string(config.n) + "_P" + format_number(config.capacity) +
         "_a" + (config.adversarial ? "1" : "0") + "_" + std::to_string(index) + ".json";
}

}  // namespace cecsp
