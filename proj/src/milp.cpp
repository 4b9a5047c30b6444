#include <string>

#include "cecsp/error.hpp"
#include "cecsp/exact.hpp"
#include "cecsp/instance_io.hpp"
#include "cecsp/lp_format.hpp"

namespace cecsp {

namespace {

std::string name(const char* prefix, int a, int b) {
  return prefix + std::to_string(a) + '_' + std::to_string(b);
}

std::string name(const char* prefix, int a, int b, int c) {
  return name(prefix, a, b) + '_' + std::to_string(c);
}

}  // namespace

int MilpModel::pair_offset(EventId i, EventId k) const {
  const int events = num_events();
  return i.index() * (events - 1) + k.index() - (k.value > i.value ? 1 : 0);
}

int MilpModel::consumption_column(int job, EventId i) const {
  return first_consumption_ + (job - 1) * num_events() + i.index();
}

int MilpModel::before_column(EventId i, EventId later) const {
  return first_before_ + pair_offset(i, later);
}

int MilpModel::successor_column(EventId i, EventId next) const {
  return first_successor_ + pair_offset(i, next);
}

MilpModel build_milp(const Instance& inst) {
  MilpModel model;
  const int n = inst.num_jobs();
  const int events = 2 * n;
  const double horizon = inst.horizon();
  const double capacity = inst.capacity();
  model.num_jobs = n;
  model.horizon = horizon;
  LinearProgram& lp = model.program;
  lp.objective_offset = inst.total_offset();

  for (int i = 1; i <= events; ++i) {
    const EventId id{i};
    lp.add_column("t_" + std::to_string(i), 0.0, kInfinity,
                  id.is_start() ? 0.0 : inst.job(id.job()).weight);
  }
  model.first_consumption_ = lp.num_columns();
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= events; ++i) {
      // Nothing is consumed in the interval a job's own completion opens.
      const double upper = i == 2 * j ? 0.0 : kInfinity;
      lp.add_column(name("p_", j, i), 0.0, upper, 0.0);
    }
  }
  auto add_binaries = [&](const char* prefix) {
    const int first = lp.num_columns();
    for (int i = 1; i <= events; ++i) {
      for (int k = 1; k <= events; ++k) {
        if (i == k) continue;
        const int col = lp.add_column(name(prefix, i, k), 0.0, 1.0, 0.0);
        lp.columns[col].is_integer = true;
      }
    }
    return first;
  };
  model.first_before_ = add_binaries("a_");
  model.first_successor_ = add_binaries("b_");

  auto t = [&](int i) { return model.time_column(EventId{i}); };
  auto p = [&](int j, int i) { return model.consumption_column(j, EventId{i}); };
  auto a = [&](int i, int k) { return model.before_column(EventId{i}, EventId{k}); };
  auto b = [&](int i, int k) { return model.successor_column(EventId{i}, EventId{k}); };

  for (int j = 1; j <= n; ++j) {
    const int fixed = a(2 * j - 1, 2 * j);
    lp.columns[fixed].lower = 1.0;
    lp.add_row(name("fix_", 2 * j - 1, 2 * j), {{fixed, 1.0}}, RowSense::kEqual, 1.0);
  }

  // Total work
  for (int j = 1; j <= n; ++j) {
    std::vector<LpTerm> terms;
    for (int i = 1; i <= events; ++i) terms.push_back({p(j, i), 1.0});
    lp.add_row("energy_" + std::to_string(j), std::move(terms), RowSense::kEqual,
               inst.job(j).e_total);
  }
  // Release and deadline
  for (int j = 1; j <= n; ++j) {
    lp.add_row("release_" + std::to_string(j), {{t(2 * j - 1), 1.0}},
               RowSense::kGreaterEqual, inst.job(j).release);
    lp.add_row("deadline_" + std::to_string(j), {{t(2 * j), 1.0}},
               RowSense::kLessEqual, inst.job(j).deadline);
  }
  // No consumption outside the window, M = E_j
  for (int j = 1; j <= n; ++j) {
    const double big = inst.job(j).e_total;
    for (int i = 1; i <= events; ++i) {
      if (i != 2 * j) {
        lp.add_row(name("before_end_", j, i), {{p(j, i), 1.0}, {a(i, 2 * j), -big}},
                   RowSense::kLessEqual, 0.0);
      }
      if (i != 2 * j - 1) {
        lp.add_row(name("after_start_", j, i), {{p(j, i), 1.0}, {a(2 * j - 1, i), -big}},
                   RowSense::kLessEqual, 0.0);
      }
    }
  }
  // Upper rate bound, M = P+_j H
  for (int j = 1; j <= n; ++j) {
    const double rate = inst.job(j).p_max;
    const double big = rate * horizon;
    for (int i = 1; i <= events; ++i) {
      for (int k = 1; k <= events; ++k) {
        if (i == k) continue;
        lp.add_row(name("rate_max_", j, i, k),
                   {{p(j, i), 1.0}, {t(k), -rate}, {t(i), rate}, {a(k, i), -big}},
                   RowSense::kLessEqual, 0.0);
      }
    }
  }
  // Lower rate bound on consecutive events inside the window,
  // M = P-_j H. Rows whose self-pair term is the constant 1 are vacuous
  // And omitted.
  for (int j = 1; j <= n; ++j) {
    const double rate = inst.job(j).p_min;
    const double big = rate * horizon;
    for (int i = 1; i <= events; ++i) {
      if (i == 2 * j) continue;
      for (int k = 1; k <= events; ++k) {
        if (i == k || k == 2 * j - 1) continue;
        std::vector<LpTerm> terms{{p(j, i), 1.0}};
        if (rate != 0) {
          terms.push_back({t(k), -rate});
          terms.push_back({t(i), rate});
          terms.push_back({b(i, k), -big});
          terms.push_back({a(k, 2 * j - 1), big});
          terms.push_back({a(2 * j, i), big});
        }
        lp.add_row(name("rate_min_", j, i, k), std::move(terms),
                   RowSense::kGreaterEqual, -big);
      }
    }
  }
  // Capacity, M = P H
  for (int i = 1; i <= events; ++i) {
    for (int k = 1; k <= events; ++k) {
      if (i == k) continue;
      std::vector<LpTerm> terms;
      for (int j = 1; j <= n; ++j) terms.push_back({p(j, i), 1.0});
      terms.push_back({t(k), -capacity});
      terms.push_back({t(i), capacity});
      terms.push_back({a(k, i), -capacity * horizon});
      lp.add_row(name("capacity_", i, k), std::move(terms), RowSense::kLessEqual, 0.0);
    }
  }
  // Times follow the order, M = H
  for (int i = 1; i <= events; ++i) {
    for (int k = 1; k <= events; ++k) {
      if (i == k) continue;
      lp.add_row(name("time_order_", i, k), {{t(i), 1.0}, {t(k), -1.0}, {a(k, i), -horizon}},
                 RowSense::kLessEqual, 0.0);
    }
  }
  // Antisymmetry
  for (int i = 1; i <= events; ++i) {
    for (int k = i + 1; k <= events; ++k) {
      lp.add_row(name("antisym_", i, k), {{a(i, k), 1.0}, {a(k, i), 1.0}},
                 RowSense::kEqual, 1.0);
    }
  }
  // B marks immediate successors, M = 2n
  const double succ_big = events;
  for (int i = 1; i <= events; ++i) {
    for (int k = 1; k <= events; ++k) {
      if (i == k) continue;
      std::vector<LpTerm> diff;
      for (int l = 1; l <= events; ++l) {
        if (l != i) diff.push_back({a(i, l), 1.0});
      }
      for (int l = 1; l <= events; ++l) {
        if (l != k) diff.push_back({a(k, l), -1.0});
      }
      std::vector<LpTerm> upper = diff;
      upper.push_back({b(i, k), succ_big});
      lp.add_row(name("succ_upper_", i, k), std::move(upper), RowSense::kLessEqual,
                 1.0 + succ_big);
      diff.push_back({b(i, k), -succ_big});
      lp.add_row(name("succ_lower_", i, k), std::move(diff), RowSense::kGreaterEqual,
                 1.0 - succ_big);
    }
  }
  // Exactly 2n-1 successor links
  {
    std::vector<LpTerm> terms;
    for (int i = 1; i <= events; ++i) {
      for (int k = 1; k <= events; ++k) {
        if (i != k) terms.push_back({b(i, k), 1.0});
      }
    }
    lp.add_row("succ_count", std::move(terms), RowSense::kEqual, events - 1.0);
  }
  // Processing time range
  for (int j = 1; j <= n; ++j) {
    const Job& job = inst.job(j);
    if (job.p_min > 0) {
      lp.add_row("max_duration_" + std::to_string(j), {{t(2 * j), 1.0}, {t(2 * j - 1), -1.0}},
                 RowSense::kLessEqual, job.e_total / job.p_min);
    }
    lp.add_row("min_duration_" + std::to_string(j), {{t(2 * j), 1.0}, {t(2 * j - 1), -1.0}},
               RowSense::kGreaterEqual, job.e_total / job.p_max);
  }
  return model;
}

void export_milp(const MilpModel& model, const std::filesystem::path& path) {
  write_text_file(path, to_lp_format(model.program,
                                     "CECSP event-based MILP, n = " +
                                         std::to_string(model.num_jobs)));
}

LinearProgram fix_order(const MilpModel& model, const EventOrder& order) {
  const int events = model.num_events();
  if (order.size() != events) {
    throw std::invalid_argument("order does not match model size");
  }
  const int kept = events + model.num_jobs * events;  // t and p columns
  std::vector<double> fixed(model.program.num_columns(), 0.0);
  for (int i = 1; i <= events; ++i) {
    for (int k = 1; k <= events; ++k) {
      if (i == k) continue;
      const int pi = order.position(EventId{i});
      const int pk = order.position(EventId{k});
      fixed[model.before_column(EventId{i}, EventId{k})] = pi < pk ? 1.0 : 0.0;
      fixed[model.successor_column(EventId{i}, EventId{k})] = pk == pi + 1 ? 1.0 : 0.0;
    }
  }
  LinearProgram out;
  out.objective_offset = model.program.objective_offset;
  out.columns.assign(model.program.columns.begin(),
                     model.program.columns.begin() + kept);
  for (LpColumn& col : out.columns) col.is_integer = false;
  for (const LpRow& row : model.program.rows) {
    LpRow reduced{row.name, {}, row.sense, row.rhs};
    for (const LpTerm& term : row.terms) {
      if (term.column < kept) {
        reduced.terms.push_back(term);
      } else {
        reduced.rhs -= term.coefficient * fixed[term.column];
      }
    }
    out.rows.push_back(std::move(reduced));
  }
  return out;
}

}  // namespace cecsp
