// Linear programs in row form and a dense bounded-variable primal simplex.
//
// The solver is sized for the schedule LPs of this project (a few hundred
// rows and columns). It keeps a dense tableau, handles column bounds
// implicitly and runs a two-phase method with Harris ratio test, falling
// back to Bland's rule on long degenerate stretches.

#ifndef CECSP_LP_HPP
#define CECSP_LP_HPP

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace cecsp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct LpColumn {
  std::string name;
  double lower = 0;
  double upper = kInfinity;
  double cost = 0;
  bool is_integer = false;  // only meaningful for export; solve relaxes it
};

struct LpTerm {
  int column = 0;
  double coefficient = 0;
};

struct LpRow {
  std::string name;
  std::vector<LpTerm> terms;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0;
};

// minimize Σ cost_j x_j + objective_offset subject to the rows and bounds.
struct LinearProgram {
  std::vector<LpColumn> columns;
  std::vector<LpRow> rows;
  double objective_offset = 0;

  int add_column(std::string name, double lower, double upper, double cost);
  int add_row(std::string name, std::vector<LpTerm> terms, RowSense sense,
              double rhs);
  int num_columns() const { return static_cast<int>(columns.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
  // Index of the column named `name`, or -1.
  int find_column(const std::string& name) const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit,
                      kNumericalError };
const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;  // one per column; empty unless optimal
  double objective = kInfinity;
  int iterations = 0;
};

struct SimplexOptions {
  int max_iterations = 100000;
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  // Final acceptance threshold on row and bound residuals, scaled by
  // max(1, |rhs|).
  double residual_tol = 1e-7;
};

// Deterministic: identical input gives bitwise-identical output. Columns
// must have a finite lower bound.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& opts = {});

// Largest scaled violation of any row or column bound by `values`.
double max_residual(const LinearProgram& lp, std::span<const double> values);

}  // namespace cecsp

#endif  // CECSP_LP_HPP
