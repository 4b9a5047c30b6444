#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "cecsp/error.hpp"
#include "cecsp/search.hpp"

namespace cecsp {

SAConfig SAConfig::defaults_for(int num_jobs) {
  SAConfig config;
  config.t_init = num_jobs;
  config.alpha_period = (2 * num_jobs - 1) * 4;
  // Long enough for T to fall to ~5e-4 of its start value.
  config.max_iter = std::max<long>(5000, 150L * config.alpha_period);
  config.restart.enabled = num_jobs >= 50;
  return config;
}

void SAConfig::validate() const {
  auto fail = [](const char* what) { throw std::invalid_argument(what); };
  if (!(t_init >= 0)) fail("t_init must be nonnegative");
  if (!(alpha > 0 && alpha < 1)) fail("alpha must lie in (0,1)");
  if (alpha_period < 1) fail("alpha_period must be positive");
  if (max_iter < 0) fail("max_iter must be nonnegative");
  if (penalties.bound < 0 || penalties.capacity < 0) fail("penalties must be nonnegative");
  double sum = 0;
  for (double p : op_probs) {
    if (p < 0) fail("operator probabilities must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) fail("operator probabilities must sum to 1");
  if (restart.n_random_swaps < 1) fail("n_random_swaps must be positive");
  if (restart.min_wall_seconds < 0) fail("min_wall_seconds must be nonnegative");
  if (time_limit_seconds < 0) fail("time limit must be nonnegative");
  if (tolerance < 0) fail("tolerance must be nonnegative");
}

nlohmann::json to_json(const SAConfig& c) {
  return {
      {"t_init", c.t_init},
      {"alpha", c.alpha},
      {"alpha_period", c.alpha_period},
      {"max_iter", c.max_iter},
      {"penalties", {{"bound", c.penalties.bound}, {"capacity", c.penalties.capacity}}},
      {"op_probs", c.op_probs},
      {"restart",
       {{"enabled", c.restart.enabled},
        {"min_wall_seconds", c.restart.min_wall_seconds},
        {"n_random_swaps", c.restart.n_random_swaps}}},
      {"seed", c.seed},
      {"time_limit_seconds", c.time_limit_seconds},
      {"tolerance", c.tolerance},
  };
}

SAConfig sa_config_from_json(const nlohmann::json& doc, const SAConfig& base) {
  if (!doc.is_object()) throw FormatError("SA config is not a JSON object");
  SAConfig c = base;
  try {
    auto take = [&](const nlohmann::json& obj, const char* key, auto& field) {
      if (obj.contains(key)) obj.at(key).get_to(field);
    };
    take(doc, "t_init", c.t_init);
    take(doc, "alpha", c.alpha);
    take(doc, "alpha_period", c.alpha_period);
    take(doc, "max_iter", c.max_iter);
    if (doc.contains("penalties")) {
      take(doc["penalties"], "bound", c.penalties.bound);
      take(doc["penalties"], "capacity", c.penalties.capacity);
    }
    take(doc, "op_probs", c.op_probs);
    if (doc.contains("restart")) {
      const auto& r = doc["restart"];
      take(r, "enabled", c.restart.enabled);
      take(r, "min_wall_seconds", c.restart.min_wall_seconds);
      take(r, "n_random_swaps", c.restart.n_random_swaps);
    }
    take(doc, "seed", c.seed);
    take(doc, "time_limit_seconds", c.time_limit_seconds);
    take(doc, "tolerance", c.tolerance);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad SA config: ") + e.what());
  }
  return c;
}

namespace {

enum Operator { kSwap = 0, kMove = 1, kPair = 2 };

class Annealer {
 public:
  Annealer(const Instance& inst, const PrecedenceSet& prec, const SAConfig& config,
           const TraceObserver& observer)
      : inst_(inst), prec_(prec), config_(config), observer_(observer),
        rng_(config.seed), started_(Clock::now()) {}

  SearchResult run(const EventOrder& initial) {
    current_ = initial;
    current_eval_ = evaluate(current_);
    result_.initial_score = current_eval_.score;
    note(TraceKind::kInitial, current_, current_eval_.score);
    take_best(current_, current_eval_);
    temperature_ = config_.t_init;

    while (result_.iterations < config_.max_iter && !out_of_time()) {
      if (!step()) {
        if (!config_.restart.enabled ||
            elapsed() >= config_.restart.min_wall_seconds || !restart()) {
          break;
        }
        continue;
      }
      ++result_.iterations;
      if (result_.iterations % config_.alpha_period == 0) {
        temperature_ *= config_.alpha;
      }
    }
    result_.accepted_moves = result_.iterations;
    result_.wall_time = elapsed();
    return std::move(result_);
  }

 private:
  using Clock = std::chrono::steady_clock;
  static constexpr std::size_t kCacheLimit = 1 << 16;

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - started_).count();
  }

  bool out_of_time() const {
    return config_.time_limit_seconds > 0 && elapsed() >= config_.time_limit_seconds;
  }

  void note(TraceKind kind, const EventOrder& order, double score) {
    if (observer_) observer_({kind, result_.iterations, order, score, temperature_});
  }

  const Evaluation& evaluate(const EventOrder& order) {
    ++result_.evaluations;
    auto it = cache_.find(order.sequence());
    if (it != cache_.end()) return it->second;
    if (cache_.size() >= kCacheLimit) cache_.clear();
    ++result_.lp_solves;
    Evaluation eval = score_order(inst_, order, config_.penalties);
    const Evaluation& stored = cache_.emplace(order.sequence(), std::move(eval)).first->second;
    if (stored.schedule && feasible(*stored.schedule) &&
        (!result_.best_feasible || stored.score < result_.best_feasible->score)) {
      result_.best_feasible = stored.schedule;
    }
    return stored;
  }

  bool feasible(const Schedule& sched) const {
    return validate_schedule(inst_, sched.order, sched, config_.tolerance).is_feasible;
  }

  void take_best(const EventOrder& order, const Evaluation& eval) {
    if (eval.score < result_.best_score || result_.best_order.size() == 0) {
      result_.best_order = order;
      result_.best_score = eval.score;
      if (eval.schedule) {
        result_.best_schedule = *eval.schedule;
        result_.feasible = feasible(*eval.schedule);
      } else {
        result_.best_schedule = Schedule{};
        result_.best_schedule.order = order;
        result_.best_schedule.score = kInfinity;
        result_.feasible = false;
      }
    }
  }

  bool accept(double candidate, double current) {
    if (std::isinf(candidate)) return std::isinf(current);
    if (candidate <= current) return true;
    if (temperature_ <= 0) return false;
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
    return u < std::exp(-(candidate - current) / temperature_);
  }

  int pick_operator() {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
    double acc = 0;
    for (int op = 0; op < 3; ++op) {
      acc += config_.op_probs[op];
      if (u < acc && config_.op_probs[op] > 0) return op;
    }
    for (int op = 2; op >= 0; --op) {
      if (config_.op_probs[op] > 0) return op;
    }
    return kSwap;
  }

  std::optional<EventOrder> apply(int op, int target) {
    switch (op) {
      case kSwap: return op_swap_adjacent(current_, prec_, target);
      case kMove: return op_move_single(current_, prec_, target, rng_);
      default: return op_move_pair(current_, prec_, target, rng_);
    }
  }

  // One GetNeighbor call. False when all operators are exhausted.
  bool step() {
    std::array<bool, 3> tried{};
    int op = pick_operator();
    while (true) {
      tried[op] = true;
      const int events = current_.size();
      const int count = op == kSwap ? events - 1 : op == kMove ? events : events / 2;
      std::vector<int> targets(std::max(count, 0));
      std::iota(targets.begin(), targets.end(), 1);
      std::shuffle(targets.begin(), targets.end(), rng_);
      for (int target : targets) {
        std::optional<EventOrder> candidate = apply(op, target);
        if (!candidate) continue;
        const Evaluation& eval = evaluate(*candidate);
        note(TraceKind::kCandidate, *candidate, eval.score);
        if (accept(eval.score, current_eval_.score)) {
          current_ = std::move(*candidate);
          current_eval_ = eval;
          note(TraceKind::kAccepted, current_, current_eval_.score);
          take_best(current_, current_eval_);
          return true;
        }
      }
      const auto next = std::find(tried.begin(), tried.end(), false);
      if (next == tried.end()) return false;
      op = static_cast<int>(next - tried.begin());
    }
  }

  // Random precedence-respecting adjacent swaps, then a fresh temperature.
  bool restart() {
    int applied = 0;
    for (int s = 0; s < config_.restart.n_random_swaps; ++s) {
      std::vector<int> valid;
      for (int pos = 1; pos < current_.size(); ++pos) {
        if (!prec_.contains(current_.at(pos), current_.at(pos + 1))) valid.push_back(pos);
      }
      if (valid.empty()) break;
      const int pick = std::uniform_int_distribution<std::size_t>(0, valid.size() - 1)(rng_);
      current_ = *op_swap_adjacent(current_, prec_, valid[pick]);
      ++applied;
    }
    if (applied == 0) return false;
    ++result_.restarts;
    temperature_ = config_.t_init;
    current_eval_ = evaluate(current_);
    note(TraceKind::kRestart, current_, current_eval_.score);
    take_best(current_, current_eval_);
    return true;
  }

  const Instance& inst_;
  const PrecedenceSet& prec_;
  const SAConfig& config_;
  const TraceObserver& observer_;
  Rng rng_;
  Clock::time_point started_;
  std::map<std::vector<EventId>, Evaluation> cache_;
  EventOrder current_;
  Evaluation current_eval_;
  double temperature_ = 0;
  SearchResult result_;
};

}  // namespace

SearchResult simulated_annealing(const Instance& inst, const PrecedenceSet& prec,
                                 const SAConfig& config, const EventOrder& initial,
                                 const TraceObserver& observer) {
  config.validate();
  if (initial.num_jobs() != inst.num_jobs()) {
    throw std::invalid_argument("initial order does not match instance size");
  }
  return Annealer(inst, prec, config, observer).run(initial);
}

}  // namespace cecsp
