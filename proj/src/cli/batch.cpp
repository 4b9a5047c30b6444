#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <omp.h>

#include "cecsp/cli.hpp"
#include "cecsp/error.hpp"
#include "cecsp/feasibility.hpp"
#include "cecsp/generator.hpp"
#include "cecsp/instance_io.hpp"

namespace cecsp::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<InstanceTag> batch_tags(const BatchOptions& opts) {
  std::vector<InstanceTag> tags;
  for (int n : opts.sizes) {
    for (double cap : opts.capacities) {
      for (bool adv : opts.adversarial) {
        for (int idx = 0; idx < opts.count; ++idx) tags.push_back({n, cap, adv, idx});
      }
    }
  }
  return tags;
}

RunRecord run_one(const BatchOptions& opts, const InstanceTag& tag) {
  GenConfig gen = GenConfig::preset(tag.n, tag.capacity, tag.adversarial);
  gen.seed = opts.seed + static_cast<std::uint64_t>(tag.index);
  const Instance inst = generate_instance(gen);
  if (opts.instance_dir) {
    write_instance(*opts.instance_dir / instance_filename(gen, tag.index), inst);
  }

  RunRecord record;
  record.tag = tag;
  record.flow_pass = check_feasibility(inst).passes;
  const PrecedenceSet prec = implicit_precedences(inst);

  SAConfig config = SAConfig::defaults_for(tag.n);
  config.seed = gen.seed;
  if (opts.max_iter) config.max_iter = *opts.max_iter;
  const auto sa_start = Clock::now();
  const SearchResult sa =
      simulated_annealing(inst, prec, config, greedy_initial_order(inst));
  record.sa.wall_time = seconds_since(sa_start);
  record.sa.init_score = sa.initial_score;
  record.sa.feasible = sa.best_feasible.has_value();
  record.sa.score = sa.reported().score;

  if (tag.n <= opts.exact_max_jobs) {
    const auto ex_start = Clock::now();
    const ExactResult ex = enumerate_exact_serial(inst, prec, {.max_jobs = opts.exact_max_jobs});
    record.exact = ExactOutcome{seconds_since(ex_start), ex.objective, ex.status};
  }
  return record;
}

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string fmt_capacity(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  // getline drops a trailing empty field.
  const auto last = line.find_last_not_of("\r ");
  if (last != std::string::npos && line[last] == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::vector<RunRecord> run_batch_serial(const BatchOptions& opts) {
  std::vector<RunRecord> out;
  for (const InstanceTag& tag : batch_tags(opts)) out.push_back(run_one(opts, tag));
  return out;
}

std::vector<RunRecord> run_batch(const BatchOptions& opts) {
  const std::vector<InstanceTag> tags = batch_tags(opts);
  const int count = static_cast<int>(tags.size());
  std::vector<RunRecord> out(count);
  std::exception_ptr failure;
  const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int k = 0; k < count; ++k) {
    try {
      out[k] = run_one(opts, tags[k]);
    } catch (...) {
#pragma omp critical(cecsp_batch_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

void attach_best_known(std::vector<RunRecord>& records,
                       const std::filesystem::path& reference_csv) {
  std::ifstream in(reference_csv);
  if (!in) throw FileError("cannot open " + reference_csv.string());
  std::string line;
  if (!std::getline(in, line)) throw FormatError(reference_csv.string() + ": empty file");
  const std::vector<std::string> header = split_csv_line(line);
  auto column = [&](const char* name) {
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (header[k] == name) return k;
    }
    throw FormatError(reference_csv.string() + ": missing column '" + name + "'");
  };
  const std::size_t cn = column("n"), cp = column("P"), ca = column("adv"),
                    ci = column("idx"), cb = column("best_known");

  using Key = std::tuple<int, double, bool, int>;
  std::map<Key, double> known;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    try {
      const Key key{std::stoi(cells.at(cn)), std::stod(cells.at(cp)),
                    std::stoi(cells.at(ca)) != 0, std::stoi(cells.at(ci))};
      if (!cells.at(cb).empty()) known[key] = std::stod(cells.at(cb));
    } catch (const std::exception&) {
      throw FormatError(reference_csv.string() + ":" + std::to_string(line_no) +
                        ": malformed row");
    }
  }
  for (RunRecord& r : records) {
    auto it = known.find({r.tag.n, r.tag.capacity, r.tag.adversarial, r.tag.index});
    if (it != known.end()) r.best_known = it->second;
  }
}

std::string batch_csv(const std::vector<RunRecord>& records, bool with_timing) {
  bool reference = false;
  for (const RunRecord& r : records) reference = reference || r.best_known.has_value();
  std::ostringstream csv;
  csv << "n,P,adv,idx,flow_feas,sa_time,sa_obj,sa_feasible,init_obj,exact_time,exact_obj";
  if (reference) csv << ",best_known";
  csv << '\n';
  for (const RunRecord& r : records) {
    csv << r.tag.n << ',' << fmt_capacity(r.tag.capacity) << ',' << (r.tag.adversarial ? 1 : 0)
        << ',' << r.tag.index << ',' << (r.flow_pass ? "yes" : "no") << ','
        << (with_timing ? fmt(r.sa.wall_time) : "") << ',' << fmt(r.sa.score) << ','
        << (r.sa.feasible ? "yes" : "no") << ',' << fmt(r.sa.init_score) << ',';
    if (r.exact) {
      csv << (with_timing ? fmt(r.exact->wall_time) : "") << ',';
      csv << (r.exact->status == ExactStatus::kOptimal ? fmt(r.exact->objective)
                                                        : to_string(r.exact->status));
    } else {
      csv << ',';
    }
    if (reference) csv << ',' << (r.best_known ? fmt(*r.best_known) : "");
    csv << '\n';
  }
  return csv.str();
}

nlohmann::json to_json(const RunRecord& r) {
  auto number = [](double x) -> nlohmann::json {
    if (std::isinf(x)) return nullptr;
    return x;
  };
  nlohmann::json doc{
      {"instance",
       {{"n", r.tag.n}, {"P", r.tag.capacity}, {"adv", r.tag.adversarial}, {"idx", r.tag.index}}},
      {"flow_pass", r.flow_pass},
      {"best_known", r.best_known ? nlohmann::json(*r.best_known) : nlohmann::json(nullptr)},
      {"sa",
       {{"wall_time", r.sa.wall_time},
        {"score", number(r.sa.score)},
        {"feasible", r.sa.feasible},
        {"init_score", number(r.sa.init_score)}}},
  };
  if (r.exact) {
    doc["exact"] = {{"wall_time", r.exact->wall_time},
                    {"objective", number(r.exact->objective)},
                    {"status", to_string(r.exact->status)}};
  } else {
    doc["exact"] = nullptr;
  }
  return doc;
}

}  // namespace cecsp::cli
