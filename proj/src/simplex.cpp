#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cecsp/lp.hpp"

namespace cecsp {

int LinearProgram::add_column(std::string name, double lower, double upper,
                              double cost) {
  columns.push_back({std::move(name), lower, upper, cost, false});
  return num_columns() - 1;
}

int LinearProgram::add_row(std::string name, std::vector<LpTerm> terms,
                           RowSense sense, double rhs) {
  rows.push_back({std::move(name), std::move(terms), sense, rhs});
  return num_rows() - 1;
}

int LinearProgram::find_column(const std::string& name) const {
  for (int j = 0; j < num_columns(); ++j) {
    if (columns[j].name == name) return j;
  }
  return -1;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
    case LpStatus::kNumericalError: return "numerical-error";
  }
  return "?";
}

double max_residual(const LinearProgram& lp, std::span<const double> values) {
  double worst = 0;
  for (const LpRow& row : lp.rows) {
    double activity = 0;
    for (const LpTerm& t : row.terms) {
      activity += t.coefficient * values[t.column];
    }
    double viol = 0;
    switch (row.sense) {
      case RowSense::kLessEqual: viol = activity - row.rhs; break;
      case RowSense::kGreaterEqual: viol = row.rhs - activity; break;
      case RowSense::kEqual: viol = std::abs(activity - row.rhs); break;
    }
    worst = std::max(worst, viol / std::max(1.0, std::abs(row.rhs)));
  }
  for (int j = 0; j < lp.num_columns(); ++j) {
    const LpColumn& col = lp.columns[j];
    if (std::isfinite(col.lower)) {
      worst = std::max(worst, (col.lower - values[j]) /
                                  std::max(1.0, std::abs(col.lower)));
    }
    if (std::isfinite(col.upper)) {
      worst = std::max(worst, (values[j] - col.upper) /
                                  std::max(1.0, std::abs(col.upper)));
    }
  }
  return worst;
}

namespace {

enum class VarState : unsigned char { kBasic, kAtLower, kAtUpper };

constexpr double kPivotTol = 1e-9;
constexpr double kDropTol = 1e-14;
constexpr int kBlandAfter = 50;

class DenseSimplex {
 public:
  DenseSimplex(const LinearProgram& lp, const SimplexOptions& opts)
      : lp_(lp), opts_(opts) {}

  LpSolution run();

 private:
  enum class Outcome { kOptimal, kUnbounded, kIterationLimit };

  double& tab(int i, int j) { return tab_[static_cast<std::size_t>(i) * total_ + j]; }
  bool setup();
  void compute_reduced_costs();
  Outcome iterate();
  void pivot(int r, int q);
  bool reinvert();
  void drive_out_artificials();
  double artificial_sum() const;
  std::vector<double> structural_values() const;

  const LinearProgram& lp_;
  SimplexOptions opts_;
  int m_ = 0;
  int n_ = 0;
  int total_ = 0;
  int first_artificial_ = 0;
  std::vector<double> a_;    // equality form, m x total, row major
  std::vector<double> tab_;  // B^{-1} A
  std::vector<double> lower_, upper_, cost_;
  std::vector<double> value_;
  std::vector<int> head_;
  std::vector<VarState> state_;
  std::vector<double> reduced_;
  std::vector<int> nonzeros_;
  int iterations_ = 0;
};

bool DenseSimplex::setup() {
  m_ = lp_.num_rows();
  n_ = lp_.num_columns();
  std::vector<double> residual(m_);
  std::vector<double> logical_coef(m_);
  std::vector<char> needs_artificial(m_, 0);
  int num_artificial = 0;

  for (int j = 0; j < n_; ++j) {
    const LpColumn& col = lp_.columns[j];
    if (!std::isfinite(col.lower)) {
      throw std::invalid_argument("simplex requires finite lower bounds: " +
                                  col.name);
    }
    if (col.lower > col.upper) return false;
  }
  for (int i = 0; i < m_; ++i) {
    const LpRow& row = lp_.rows[i];
    double activity = 0;
    for (const LpTerm& t : row.terms) {
      activity += t.coefficient * lp_.columns[t.column].lower;
    }
    residual[i] = row.rhs - activity;
    logical_coef[i] = row.sense == RowSense::kGreaterEqual ? -1.0 : 1.0;
    const double needed = residual[i] / logical_coef[i];
    const double cap = row.sense == RowSense::kEqual ? 0.0 : kInfinity;
    if (needed < -opts_.feasibility_tol || needed > cap + opts_.feasibility_tol) {
      needs_artificial[i] = 1;
      ++num_artificial;
    }
  }

  first_artificial_ = n_ + m_;
  total_ = n_ + m_ + num_artificial;
  a_.assign(static_cast<std::size_t>(m_) * total_, 0.0);
  lower_.assign(total_, 0.0);
  upper_.assign(total_, kInfinity);
  cost_.assign(total_, 0.0);
  value_.assign(total_, 0.0);
  state_.assign(total_, VarState::kAtLower);
  head_.assign(m_, -1);

  for (int j = 0; j < n_; ++j) {
    lower_[j] = lp_.columns[j].lower;
    upper_[j] = lp_.columns[j].upper;
    cost_[j] = lp_.columns[j].cost;
    value_[j] = lower_[j];
  }
  int next_art = first_artificial_;
  std::vector<double> head_coef(m_);
  for (int i = 0; i < m_; ++i) {
    double* row = &a_[static_cast<std::size_t>(i) * total_];
    for (const LpTerm& t : lp_.rows[i].terms) row[t.column] += t.coefficient;
    const int logical = n_ + i;
    row[logical] = logical_coef[i];
    if (lp_.rows[i].sense == RowSense::kEqual) upper_[logical] = 0.0;
    if (needs_artificial[i]) {
      const double sign = residual[i] >= 0 ? 1.0 : -1.0;
      row[next_art] = sign;
      head_[i] = next_art;
      head_coef[i] = sign;
      value_[next_art] = std::abs(residual[i]);
      state_[next_art] = VarState::kBasic;
      ++next_art;
    } else {
      head_[i] = logical;
      head_coef[i] = logical_coef[i];
      value_[logical] = residual[i] / logical_coef[i];
      state_[logical] = VarState::kBasic;
    }
  }
  tab_ = a_;
  for (int i = 0; i < m_; ++i) {
    if (head_coef[i] < 0) {
      for (int j = 0; j < total_; ++j) tab(i, j) = -tab(i, j);
    }
  }
  return true;
}

void DenseSimplex::compute_reduced_costs() {
  reduced_ = cost_;
  for (int i = 0; i < m_; ++i) {
    const double cb = cost_[head_[i]];
    if (cb == 0) continue;
    const double* row = &tab_[static_cast<std::size_t>(i) * total_];
    for (int j = 0; j < total_; ++j) {
      if (row[j] != 0) reduced_[j] -= cb * row[j];
    }
  }
  for (int i = 0; i < m_; ++i) reduced_[head_[i]] = 0;
}

void DenseSimplex::pivot(int r, int q) {
  double* prow = &tab_[static_cast<std::size_t>(r) * total_];
  const double inv = 1.0 / prow[q];
  nonzeros_.clear();
  for (int k = 0; k < total_; ++k) {
    if (prow[k] == 0) continue;
    prow[k] *= inv;
    if (std::abs(prow[k]) < kDropTol) {
      prow[k] = 0;
    } else {
      nonzeros_.push_back(k);
    }
  }
  prow[q] = 1.0;
  for (int i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* row = &tab_[static_cast<std::size_t>(i) * total_];
    const double f = row[q];
    if (f == 0) continue;
    for (int k : nonzeros_) {
      const double v = row[k] - f * prow[k];
      row[k] = std::abs(v) < kDropTol ? 0.0 : v;
    }
    row[q] = 0.0;
  }
  const double f = reduced_[q];
  if (f != 0) {
    for (int k : nonzeros_) reduced_[k] -= f * prow[k];
  }
  reduced_[q] = 0.0;
  head_[r] = q;
}

DenseSimplex::Outcome DenseSimplex::iterate() {
  int degenerate_streak = 0;
  bool bland = false;
  while (true) {
    if (iterations_ >= opts_.max_iterations) return Outcome::kIterationLimit;

    // Pricing: Dantzig, or first eligible index under Bland.
    int q = -1;
    double best = 0;
    for (int j = 0; j < total_; ++j) {
      if (state_[j] == VarState::kBasic || lower_[j] == upper_[j]) continue;
      const double d = reduced_[j];
      const bool eligible =
          (state_[j] == VarState::kAtLower && d < -opts_.optimality_tol) ||
          (state_[j] == VarState::kAtUpper && d > opts_.optimality_tol);
      if (!eligible) continue;
      if (bland) {
        q = j;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        q = j;
      }
    }
    if (q < 0) return Outcome::kOptimal;
    const double dir = state_[q] == VarState::kAtLower ? 1.0 : -1.0;

    // Harris ratio test, pass 1: relaxed step length.
    const double flip = upper_[q] - lower_[q];
    double relaxed = kInfinity;
    for (int i = 0; i < m_; ++i) {
      const double alpha = tab(i, q);
      if (std::abs(alpha) <= kPivotTol) continue;
      const double rate = -dir * alpha;
      const int b = head_[i];
      if (rate < 0 && std::isfinite(lower_[b])) {
        relaxed = std::min(
            relaxed, (value_[b] - lower_[b] + opts_.feasibility_tol) / -rate);
      } else if (rate > 0 && std::isfinite(upper_[b])) {
        relaxed = std::min(
            relaxed, (upper_[b] - value_[b] + opts_.feasibility_tol) / rate);
      }
    }
    if (!std::isfinite(relaxed) && !std::isfinite(flip)) {
      return Outcome::kUnbounded;
    }
    relaxed = std::max(relaxed, 0.0);

    ++iterations_;
    if (flip <= relaxed) {
      // Entering variable runs to its opposite bound without a basis change.
      for (int i = 0; i < m_; ++i) {
        const double alpha = tab(i, q);
        if (alpha != 0) value_[head_[i]] -= dir * alpha * flip;
      }
      state_[q] = dir > 0 ? VarState::kAtUpper : VarState::kAtLower;
      value_[q] = dir > 0 ? upper_[q] : lower_[q];
      degenerate_streak = 0;
      bland = false;
      continue;
    }

    // Pass 2: among rows within the relaxed step, the largest pivot.
    int r = -1;
    double theta = 0;
    double best_alpha = 0;
    for (int i = 0; i < m_; ++i) {
      const double alpha = tab(i, q);
      if (std::abs(alpha) <= kPivotTol) continue;
      const double rate = -dir * alpha;
      const int b = head_[i];
      double limit = kInfinity;
      if (rate < 0 && std::isfinite(lower_[b])) {
        limit = std::max(0.0, (value_[b] - lower_[b]) / -rate);
      } else if (rate > 0 && std::isfinite(upper_[b])) {
        limit = std::max(0.0, (upper_[b] - value_[b]) / rate);
      }
      if (limit > relaxed) continue;
      const bool better =
          bland ? (r < 0 || b < head_[r]) : std::abs(alpha) > best_alpha;
      if (better) {
        r = i;
        theta = limit;
        best_alpha = std::abs(alpha);
      }
    }

    const double rate_r = -dir * tab(r, q);
    for (int i = 0; i < m_; ++i) {
      const double alpha = tab(i, q);
      if (alpha != 0) value_[head_[i]] -= dir * alpha * theta;
    }
    const int leaving = head_[r];
    value_[q] += dir * theta;
    if (rate_r < 0) {
      state_[leaving] = VarState::kAtLower;
      value_[leaving] = lower_[leaving];
    } else {
      state_[leaving] = VarState::kAtUpper;
      value_[leaving] = upper_[leaving];
    }
    state_[q] = VarState::kBasic;
    pivot(r, q);

    if (theta <= 1e-12) {
      if (++degenerate_streak > kBlandAfter) bland = true;
    } else {
      degenerate_streak = 0;
      bland = false;
    }
  }
}

bool DenseSimplex::reinvert() {
  tab_ = a_;
  std::vector<double> rhs(m_);
  for (int i = 0; i < m_; ++i) {
    double v = lp_.rows[i].rhs;
    const double* row = &a_[static_cast<std::size_t>(i) * total_];
    for (int j = 0; j < total_; ++j) {
      if (state_[j] != VarState::kBasic && row[j] != 0) v -= row[j] * value_[j];
    }
    rhs[i] = v;
  }
  std::vector<int> new_head(m_, -1);
  std::vector<char> assigned(m_, 0);
  for (int slot = 0; slot < m_; ++slot) {
    const int c = head_[slot];
    int p = -1;
    double best = 1e-11;
    for (int i = 0; i < m_; ++i) {
      if (!assigned[i] && std::abs(tab(i, c)) > best) {
        best = std::abs(tab(i, c));
        p = i;
      }
    }
    if (p < 0) return false;
    assigned[p] = 1;
    new_head[p] = c;
    double* prow = &tab_[static_cast<std::size_t>(p) * total_];
    const double inv = 1.0 / prow[c];
    nonzeros_.clear();
    for (int k = 0; k < total_; ++k) {
      if (prow[k] == 0) continue;
      prow[k] *= inv;
      nonzeros_.push_back(k);
    }
    rhs[p] *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == p) continue;
      double* row = &tab_[static_cast<std::size_t>(i) * total_];
      const double f = row[c];
      if (f == 0) continue;
      for (int k : nonzeros_) row[k] -= f * prow[k];
      row[c] = 0.0;
      rhs[i] -= f * rhs[p];
    }
  }
  head_ = new_head;
  for (int i = 0; i < m_; ++i) value_[head_[i]] = rhs[i];
  compute_reduced_costs();
  return true;
}

void DenseSimplex::drive_out_artificials() {
  for (int j = first_artificial_; j < total_; ++j) {
    lower_[j] = upper_[j] = 0.0;
    if (state_[j] != VarState::kBasic) {
      state_[j] = VarState::kAtLower;
      value_[j] = 0.0;
    }
  }
  for (int i = 0; i < m_; ++i) {
    if (head_[i] < first_artificial_) continue;
    int best_col = -1;
    double best = 1e-7;
    for (int k = 0; k < first_artificial_; ++k) {
      if (state_[k] == VarState::kBasic) continue;
      if (std::abs(tab(i, k)) > best) {
        best = std::abs(tab(i, k));
        best_col = k;
      }
    }
    if (best_col < 0) continue;  // redundant row; artificial stays at zero
    const int art = head_[i];
    state_[art] = VarState::kAtLower;
    value_[art] = 0.0;
    state_[best_col] = VarState::kBasic;
    pivot(i, best_col);
  }
}

double DenseSimplex::artificial_sum() const {
  double s = 0;
  for (int j = first_artificial_; j < total_; ++j) s += std::abs(value_[j]);
  return s;
}

std::vector<double> DenseSimplex::structural_values() const {
  std::vector<double> x(value_.begin(), value_.begin() + n_);
  for (int j = 0; j < n_; ++j) {
    // Snap solver noise onto the bounds.
    if (x[j] < lower_[j] && lower_[j] - x[j] <= 1e-9 * std::max(1.0, std::abs(lower_[j]))) {
      x[j] = lower_[j];
    }
    if (x[j] > upper_[j] && x[j] - upper_[j] <= 1e-9 * std::max(1.0, std::abs(upper_[j]))) {
      x[j] = upper_[j];
    }
  }
  return x;
}

LpSolution DenseSimplex::run() {
  LpSolution sol;
  if (!setup()) {
    sol.status = LpStatus::kInfeasible;
    return sol;
  }
  auto finish = [&](LpStatus status) {
    sol.status = status;
    sol.iterations = iterations_;
    return sol;
  };

  if (total_ > first_artificial_) {
    const std::vector<double> original_cost = cost_;
    std::fill(cost_.begin(), cost_.end(), 0.0);
    std::fill(cost_.begin() + first_artificial_, cost_.end(), 1.0);
    compute_reduced_costs();
    const Outcome phase1 = iterate();
    if (phase1 == Outcome::kIterationLimit) {
      return finish(LpStatus::kIterationLimit);
    }
    if (artificial_sum() > opts_.residual_tol) {
      return finish(LpStatus::kInfeasible);
    }
    cost_ = original_cost;
    drive_out_artificials();
  }
  compute_reduced_costs();

  for (int attempt = 0;; ++attempt) {
    const Outcome phase2 = iterate();
    if (phase2 == Outcome::kIterationLimit) {
      return finish(LpStatus::kIterationLimit);
    }
    if (phase2 == Outcome::kUnbounded) return finish(LpStatus::kUnbounded);
    std::vector<double> x = structural_values();
    if (max_residual(lp_, x) <= opts_.residual_tol) {
      double obj = lp_.objective_offset;
      for (int j = 0; j < n_; ++j) obj += cost_[j] * x[j];
      sol.values = std::move(x);
      sol.objective = obj;
      return finish(LpStatus::kOptimal);
    }
    // Accumulated drift: rebuild the tableau from the original data and
    // resume.
    if (attempt >= 2 || !reinvert()) {
      return finish(LpStatus::kNumericalError);
    }
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& opts) {
  return DenseSimplex(lp, opts).run();
}

}  // namespace cecsp
