#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "cecsp/cli.hpp"
#include "cecsp/error.hpp"
#include "cecsp/evaluator.hpp"
#include "cecsp/feasibility.hpp"
#include "cecsp/generator.hpp"
#include "cecsp/instance_io.hpp"

namespace cecsp::cli {

namespace fs = std::filesystem;

fs::path default_output_dir() {
  if (const char* dir = std::getenv("CECSP_OUTPUT_DIR"); dir && *dir) return dir;
  return ".";
}

namespace {

// A refused enumeration; mapped to its own exit code.
struct GuardRefused : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path output_or(const std::string& given, const fs::path& input, const char* suffix) {
  if (!given.empty()) return given;
  return default_output_dir() / (input.stem().string() + suffix);
}

std::string show(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << x;
  return s.str();
}

struct SolveFlags {
  std::string instance, out, record, gantt, config;
  double t_init = 0, alpha = 0, restart_wall = 0, time_limit = 0, tolerance = 0;
  double penalty_bound = 0, penalty_capacity = 0, p_swap = 0, p_move = 0, p_pair = 0;
  int alpha_period = 0, restart_swaps = 0;
  long max_iter = 0;
  std::uint64_t seed = 1;
  bool restart = false, no_restart = false, no_implicit = false;
};

struct Options {
  // generate
  GenConfig gen;
  int gen_count = 1;
  std::string gen_dir;
  // check / validate / exact / export
  std::string instance, schedule, out, lp_out;
  bool json = false;
  double tol = kDefaultTolerance;
  int max_jobs = 7;
  int threads = 0;
  bool export_only = false, no_export = false;
  // solve
  SolveFlags solve;
  // batch
  BatchOptions batch;
  std::vector<int> batch_adv{0};
  long batch_max_iter = 0;
  std::string reference, batch_out, batch_instances;
  bool omit_timing = false, serial = false;
};

int cmd_generate(Options& o, CLI::App& sub, std::ostream& out, std::ostream& err) {
  GenConfig base = GenConfig::preset(o.gen.n, o.gen.capacity, o.gen.adversarial);
  // Explicit scaling flags win over the preset.
  for (const char* name : {"--a-maxlow", "--a-minupp", "--a-rshift", "--a-pws"}) {
    if (sub.count(name) == 0) continue;
    const std::string flag = name;
    if (flag == "--a-maxlow") base.a_maxlow = o.gen.a_maxlow;
    if (flag == "--a-minupp") base.a_minupp = o.gen.a_minupp;
    if (flag == "--a-rshift") base.a_rshift = o.gen.a_rshift;
    if (flag == "--a-pws") base.a_pws = o.gen.a_pws;
  }
  base.with_offsets = o.gen.with_offsets;
  const fs::path dir = o.gen_dir.empty() ? default_output_dir() : fs::path(o.gen_dir);
  for (int idx = 0; idx < o.gen_count; ++idx) {
    GenConfig cfg = base;
    cfg.seed = o.gen.seed + static_cast<std::uint64_t>(idx);
    GenerationLog log;
    const Instance inst = generate_instance(cfg, &log);
    const fs::path path = dir / instance_filename(cfg, idx);
    write_instance(path, inst);
    for (const std::string& line : log) err << path.filename().string() << ": " << line << '\n';
    out << path.string() << '\n';
  }
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  const Instance inst = read_instance(o.instance);
  const FeasibilityReport rep = check_feasibility(inst);
  if (o.json) {
    out << nlohmann::json{{"passes", rep.passes},
                          {"max_flow", rep.max_flow},
                          {"demand", rep.demand},
                          {"shortfall", rep.shortfall},
                          {"cut_jobs", rep.cut_jobs}}
               .dump(2)
        << '\n';
  } else {
    out << (rep.passes ? "pass" : "fail") << '\n'
        << "max_flow " << show(rep.max_flow) << '\n'
        << "demand " << show(rep.demand) << '\n';
    for (std::size_t j = 0; j < rep.shortfall.size(); ++j) {
      if (rep.shortfall[j] > kFlowSlack) {
        out << "shortfall job " << j + 1 << ' ' << show(rep.shortfall[j]) << '\n';
      }
    }
  }
  return rep.passes ? kExitOk : kExitNegative;
}

SAConfig solve_config(const SolveFlags& f, CLI::App& sub, int n) {
  SAConfig c = SAConfig::defaults_for(n);
  if (!f.config.empty()) c = sa_config_from_json(read_json_file(f.config), c);
  auto given = [&](const char* name) { return sub.count(name) > 0; };
  if (given("--t-init")) c.t_init = f.t_init;
  if (given("--alpha")) c.alpha = f.alpha;
  if (given("--alpha-period")) c.alpha_period = f.alpha_period;
  if (given("--max-iter")) c.max_iter = f.max_iter;
  if (given("--penalty-bound")) c.penalties.bound = f.penalty_bound;
  if (given("--penalty-capacity")) c.penalties.capacity = f.penalty_capacity;
  if (given("--p-swap")) c.op_probs[0] = f.p_swap;
  if (given("--p-move")) c.op_probs[1] = f.p_move;
  if (given("--p-pair")) c.op_probs[2] = f.p_pair;
  if (given("--restart")) c.restart.enabled = true;
  if (given("--no-restart")) c.restart.enabled = false;
  if (given("--restart-min-wall")) c.restart.min_wall_seconds = f.restart_wall;
  if (given("--restart-swaps")) c.restart.n_random_swaps = f.restart_swaps;
  if (given("--seed")) c.seed = f.seed;
  if (given("--time-limit")) c.time_limit_seconds = f.time_limit;
  if (given("--tolerance")) c.tolerance = f.tolerance;
  c.validate();
  return c;
}

int cmd_solve(const Options& o, CLI::App& sub, std::ostream& out) {
  const SolveFlags& f = o.solve;
  const fs::path input = f.instance;
  const Instance inst = read_instance(input);
  const SAConfig config = solve_config(f, sub, inst.num_jobs());
  const PrecedenceSet prec = f.no_implicit ? PrecedenceSet::job_pairs(inst.num_jobs())
                                           : implicit_precedences(inst);
  const SearchResult res =
      simulated_annealing(inst, prec, config, greedy_initial_order(inst));
  const Schedule& sched = res.reported();
  const bool feasible = res.best_feasible.has_value();
  if (sched.times.empty()) {
    out << "no event order with a solvable schedule LP was found\n";
    return kExitNegative;
  }

  const fs::path sched_path = output_or(f.out, input, ".schedule.json");
  write_schedule(sched_path, sched);

  RunRecord record;
  record.tag = {inst.num_jobs(), inst.capacity(), false, 0};
  record.flow_pass = check_feasibility(inst).passes;
  record.sa = {res.wall_time, sched.score, feasible, res.initial_score};
  const fs::path record_path = output_or(f.record, input, ".record.json");
  nlohmann::json rec = to_json(record);
  rec["config"] = to_json(config);
  rec["iterations"] = res.iterations;
  rec["lp_solves"] = res.lp_solves;
  rec["restarts"] = res.restarts;
  write_text_file(record_path, rec.dump(2) + "\n");
  if (!f.gantt.empty()) write_text_file(f.gantt, gantt_svg(inst, sched));

  out << "initial score " << show(res.initial_score) << '\n'
      << "best score " << show(sched.score) << (feasible ? " (feasible)" : " (infeasible)")
      << '\n'
      << "order " << to_string(sched.order) << '\n'
      << "iterations " << res.iterations << ", LP solves " << res.lp_solves << ", "
      << std::fixed << std::setprecision(2) << res.wall_time << " s\n"
      << "schedule " << sched_path.string() << '\n';
  return kExitOk;
}

int cmd_exact(const Options& o, std::ostream& out) {
  const fs::path input = o.instance;
  const Instance inst = read_instance(input);
  const bool enumerate = !o.export_only && inst.num_jobs() <= o.max_jobs;
  if (!enumerate) {
    if (o.no_export) {
      throw GuardRefused("n = " + std::to_string(inst.num_jobs()) +
                         " exceeds the enumeration limit " + std::to_string(o.max_jobs));
    }
    const fs::path lp_path = output_or(o.lp_out, input, ".lp");
    export_milp(build_milp(inst), lp_path);
    out << "model exported to " << lp_path.string() << '\n';
    return kExitOk;
  }
  if (o.threads > 0) omp_set_num_threads(o.threads);
  const ExactResult res =
      enumerate_exact(inst, implicit_precedences(inst), {.max_jobs = o.max_jobs});
  out << "status " << to_string(res.status) << '\n' << "orders " << res.explored << '\n';
  if (res.status != ExactStatus::kOptimal) return kExitNegative;
  const fs::path sched_path = output_or(o.out, input, ".exact.json");
  write_schedule(sched_path, *res.schedule);
  out << "objective " << show(res.objective) << '\n'
      << "order " << to_string(*res.order) << '\n'
      << "schedule " << sched_path.string() << '\n';
  return kExitOk;
}

int cmd_export(const Options& o, std::ostream& out) {
  const fs::path input = o.instance;
  const MilpModel model = build_milp(read_instance(input));
  const fs::path lp_path = output_or(o.out, input, ".lp");
  export_milp(model, lp_path);
  out << model.program.num_columns() << " columns, " << model.program.num_rows()
      << " rows written to " << lp_path.string() << '\n';
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Instance inst = read_instance(o.instance);
  const Schedule sched = read_schedule(o.schedule);
  if (sched.order.num_jobs() != inst.num_jobs()) {
    throw FormatError("schedule and instance sizes differ");
  }
  ValidationReport rep;
  try {
    rep = validate_schedule(inst, sched.order, sched, o.tol);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  const double cost = schedule_cost(inst, sched);
  if (o.json) {
    nlohmann::json doc{{"feasible", rep.is_feasible},
                       {"max_violation", rep.max_violation()},
                       {"cost", cost}};
    for (int c = 0; c < kNumConstraints; ++c) {
      nlohmann::json list = nlohmann::json::array();
      for (const Violation& v : rep.violations[c]) {
        list.push_back({{"job", v.job}, {"event", v.interval.value}, {"magnitude", v.magnitude}});
      }
      doc["violations"][constraint_label(static_cast<Constraint>(c))] = list;
    }
    out << doc.dump(2) << '\n';
  } else {
    out << (rep.is_feasible ? "feasible" : "infeasible") << '\n'
        << "cost " << show(cost) << '\n';
    for (int c = 0; c < kNumConstraints; ++c) {
      for (const Violation& v : rep.violations[c]) {
        if (v.magnitude <= o.tol) continue;
        out << constraint_label(static_cast<Constraint>(c)) << " job " << v.job;
        if (v.interval.value) out << " interval " << v.interval.value;
        out << " by " << show(v.magnitude) << '\n';
      }
    }
  }
  return rep.is_feasible ? kExitOk : kExitNegative;
}

int cmd_batch(Options& o, std::ostream& out) {
  BatchOptions& b = o.batch;
  b.adversarial.clear();
  for (int a : o.batch_adv) b.adversarial.push_back(a != 0);
  if (o.batch_max_iter > 0) b.max_iter = o.batch_max_iter;
  if (!o.batch_instances.empty()) b.instance_dir = fs::path(o.batch_instances);
  std::vector<RunRecord> records = o.serial ? run_batch_serial(b) : run_batch(b);
  if (!o.reference.empty()) attach_best_known(records, o.reference);
  const fs::path path =
      o.batch_out.empty() ? default_output_dir() / "batch.csv" : fs::path(o.batch_out);
  write_text_file(path, batch_csv(records, !o.omit_timing));
  out << records.size() << " runs written to " << path.string() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CECSP toolkit: instances, flow check, local search and exact oracle", "cecsp"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("generate", "Generate random instances");
  gen->add_option("-n,--jobs", o.gen.n, "Number of jobs")->required()->check(CLI::PositiveNumber);
  gen->add_option("-P,--capacity", o.gen.capacity, "Resource capacity")->default_val(50.0);
  gen->add_flag("--adversarial", o.gen.adversarial, "Weights nondecreasing in deadline");
  gen->add_option("--a-maxlow", o.gen.a_maxlow, "Scale of the lower rate bound");
  gen->add_option("--a-minupp", o.gen.a_minupp, "Scale of the upper rate bound");
  gen->add_option("--a-rshift", o.gen.a_rshift, "Release time shift");
  gen->add_option("--a-pws", o.gen.a_pws, "Processing window scale");
  gen->add_flag("--offsets", o.gen.with_offsets, "Sample cost offsets B_j");
  gen->add_option("--seed", o.gen.seed, "Seed of the first instance")->default_val(1);
  gen->add_option("--count", o.gen_count, "Number of instances")->default_val(1)->check(CLI::PositiveNumber);
  gen->add_option("-o,--out-dir", o.gen_dir, "Output directory");

  auto* check = app.add_subcommand("check", "Max-flow feasibility screen");
  check->add_option("instance", o.instance)->required();
  check->add_flag("--json", o.json, "Machine-readable output");

  auto* solve = app.add_subcommand("solve", "Greedy start plus simulated annealing");
  SolveFlags& f = o.solve;
  solve->add_option("instance", f.instance)->required();
  solve->add_option("-o,--out", f.out, "Schedule file");
  solve->add_option("--record", f.record, "Run record file");
  solve->add_option("--gantt", f.gantt, "SVG chart of the schedule");
  solve->add_option("--config", f.config, "SA configuration JSON");
  solve->add_option("--t-init", f.t_init, "Initial temperature (default n)");
  solve->add_option("--alpha", f.alpha, "Cooling factor (default 0.95)");
  solve->add_option("--alpha-period", f.alpha_period, "Iterations per cooling step (default 4(2n-1))");
  solve->add_option("--max-iter", f.max_iter, "Accepted moves before stopping");
  solve->add_option("--penalty-bound", f.penalty_bound, "Rate-bound slack price (default 5)");
  solve->add_option("--penalty-capacity", f.penalty_capacity, "Capacity slack price (default 5)");
  solve->add_option("--p-swap", f.p_swap, "Swap probability (default 0.75)");
  solve->add_option("--p-move", f.p_move, "Single-move probability (default 0.15)");
  solve->add_option("--p-pair", f.p_pair, "Pair-move probability (default 0.1)");
  auto* restart_on = solve->add_flag("--restart", f.restart, "Enable restarts");
  auto* restart_off = solve->add_flag("--no-restart", f.no_restart, "Disable restarts");
  restart_on->excludes(restart_off);
  solve->add_option("--restart-min-wall", f.restart_wall, "Restart while younger than this (s)");
  solve->add_option("--restart-swaps", f.restart_swaps, "Random swaps per restart");
  solve->add_option("--seed", f.seed, "Random seed");
  solve->add_option("--time-limit", f.time_limit, "Wall-clock limit in seconds");
  solve->add_option("--tolerance", f.tolerance, "Feasibility tolerance");
  solve->add_flag("--no-implicit", f.no_implicit, "Use only start-before-completion pairs");

  auto* exact = app.add_subcommand("exact", "Enumeration oracle, or MILP export for large n");
  exact->add_option("instance", o.instance)->required();
  exact->add_option("-o,--out", o.out, "Schedule file");
  exact->add_option("--lp", o.lp_out, "MILP file when not enumerating");
  exact->add_option("--max-jobs", o.max_jobs, "Enumeration size limit")->default_val(7);
  exact->add_option("--threads", o.threads, "Worker threads");
  auto* only = exact->add_flag("--export-only", o.export_only, "Always export the MILP");
  auto* never = exact->add_flag("--no-export", o.no_export, "Fail instead of exporting");
  only->excludes(never);

  auto* exp = app.add_subcommand("export", "Write the MILP in LP format");
  exp->add_option("instance", o.instance)->required();
  exp->add_option("-o,--out", o.out, "LP file");

  auto* validate = app.add_subcommand("validate", "Check a schedule against its instance");
  validate->add_option("instance", o.instance)->required();
  validate->add_option("schedule", o.schedule)->required();
  validate->add_option("--tol", o.tol, "Tolerance")->default_val(kDefaultTolerance);
  validate->add_flag("--json", o.json, "Machine-readable output");

  auto* batch = app.add_subcommand("batch", "Generate, solve and tabulate a suite");
  batch->add_option("--sizes", o.batch.sizes, "Job counts")->delimiter(',');
  batch->add_option("--capacities", o.batch.capacities, "Capacities")->delimiter(',');
  batch->add_option("--adv", o.batch_adv, "Adversarial settings (0,1)")->delimiter(',');
  batch->add_option("--count", o.batch.count, "Instances per combination");
  batch->add_option("--seed", o.batch.seed, "Base seed");
  batch->add_option("--max-iter", o.batch_max_iter, "SA iteration override");
  batch->add_option("--exact-max-jobs", o.batch.exact_max_jobs, "Run the oracle up to this n");
  batch->add_option("--threads", o.batch.threads, "Parallel runs (default: all cores)");
  batch->add_option("--instances-dir", o.batch_instances, "Also write the instances here");
  batch->add_option("--reference", o.reference, "CSV with best_known values");
  batch->add_option("-o,--out", o.batch_out, "Output CSV");
  batch->add_flag("--omit-timing", o.omit_timing, "Leave time columns empty");
  batch->add_flag("--serial", o.serial, "Single-threaded reference runner");

  std::vector<const char*> argv{"cecsp"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(o, *gen, out, err);
    if (*check) return cmd_check(o, out);
    if (*solve) return cmd_solve(o, *solve, out);
    if (*exact) return cmd_exact(o, out);
    if (*exp) return cmd_export(o, out);
    if (*validate) return cmd_validate(o, out);
    if (*batch) return cmd_batch(o, out);
  } catch (const FileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFile;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const GuardRefused& e) {
    err << "error: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace cecsp::cli
