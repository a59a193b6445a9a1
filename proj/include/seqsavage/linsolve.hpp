#pragma once

#include <optional>
#include <vector>

#include "seqsavage/rational.hpp"

namespace seqsavage {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

struct RankResult {
  std::size_t rank = 0;
  // When rank < rows: a nontrivial left null vector y with y^T M = 0.
  std::optional<Vec> dependency;
};

// Exact row rank by Gaussian elimination, tracking row operations so a
// dependency can be reported.
RankResult row_rank(const Mat& m);

// Solves M x = u exactly. Pivot columns are chosen left to right and every
// free variable is set to zero, so the solution's support is one basis of
// columns. Returns nullopt when the system is inconsistent.
std::optional<Vec> solve_minimal_support(const Mat& m, const Vec& u);

// Exact LP over free variables x:
//   eq_lhs[i] . x  = eq_rhs[i]
//   ge_lhs[i] . x >= ge_rhs[i]
//   maximize objective . x   (feasibility only when absent)
// Phase-I/phase-II simplex with Bland's rule.
struct LpResult {
  enum class Status { Feasible, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Vec solution;              // Feasible or Unbounded
  Rational objective_value;  // objective at `solution` (0 when no objective)
  // Farkas certificate when infeasible: multipliers (equality rows free in
  // sign, inequality rows nonnegative) combining the constraints into
  // 0 = positive. Verified before being returned.
  Vec farkas_eq;
  Vec farkas_ge;
};

// When the objective is unbounded, `solution` is a feasible point with
// objective value at least 1.
LpResult solve_lp(std::size_t num_vars, const Mat& eq_lhs, const Vec& eq_rhs,
                  const Mat& ge_lhs, const Vec& ge_rhs,
                  const std::optional<Vec>& objective);

}  // namespace seqsavage
