#include "seqsavage/linsolve.hpp"

#include <algorithm>
#include <stdexcept>

namespace seqsavage {

RankResult row_rank(const Mat& m) {
  const std::size_t rows = m.size();
  if (rows == 0) return {0, std::nullopt};
  const std::size_t cols = m[0].size();

  Mat work = m;
  // Row-operation tracker: track[i] holds the coefficients expressing
  // work[i] as a combination of the original rows.
  Mat track(rows, Vec(rows, 0));
  for (std::size_t i = 0; i < rows; ++i) track[i][i] = 1;

  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && work[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(work[pivot], work[rank]);
    std::swap(track[pivot], track[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (work[r][col] == 0) continue;
      Rational factor = work[r][col] / work[rank][col];
      for (std::size_t c = col; c < cols; ++c)
        work[r][c] -= factor * work[rank][c];
      for (std::size_t c = 0; c < rows; ++c)
        track[r][c] -= factor * track[rank][c];
    }
    ++rank;
  }
  if (rank == rows) return {rank, std::nullopt};
  // work[rank] is a zero row; its tracker exhibits the dependency.
  return {rank, track[rank]};
}

std::optional<Vec> solve_minimal_support(const Mat& m, const Vec& u) {
  const std::size_t rows = m.size();
  if (u.size() != rows) throw std::invalid_argument("rhs size mismatch");
  if (rows == 0) return Vec{};
  const std::size_t cols = m[0].size();

  Mat work = m;
  Vec rhs = u;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && work[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(work[pivot], work[rank]);
    std::swap(rhs[pivot], rhs[rank]);
    Rational lead = work[rank][col];
    for (std::size_t c = col; c < cols; ++c) work[rank][c] /= lead;
    rhs[rank] /= lead;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || work[r][col] == 0) continue;
      Rational factor = work[r][col];
      for (std::size_t c = col; c < cols; ++c)
        work[r][c] -= factor * work[rank][c];
      rhs[r] -= factor * rhs[rank];
    }
    pivots.emplace_back(rank, col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r) {
    if (rhs[r] != 0) return std::nullopt;
  }
  Vec x(cols, 0);
  for (const auto& [row, col] : pivots) x[col] = rhs[row];
  return x;
}

namespace {

// Phase-I/phase-II tableau simplex over exact rationals. Constraint rows
// are normalized to R v = rhs with v >= 0 and rhs >= 0; every row gets an
// artificial variable for the initial basis.
class Simplex {
 public:
  Simplex(std::size_t num_vars, const Mat& eq_lhs, const Vec& eq_rhs,
          const Mat& ge_lhs, const Vec& ge_rhs,
          const std::optional<Vec>& objective)
      : num_eq_(eq_lhs.size()),
        num_ge_(ge_lhs.size()),
        num_vars_(num_vars),
        objective_(objective) {
    const std::size_t m = num_eq_ + num_ge_;
    num_struct_ = 2 * num_vars_ + num_ge_;
    cols_ = num_struct_ + m + 1;  // + artificials + rhs
    tableau_.assign(m, Vec(cols_, 0));
    flipped_.assign(m, false);
    basis_.resize(m);

    for (std::size_t i = 0; i < m; ++i) {
      const Vec& lhs = i < num_eq_ ? eq_lhs[i] : ge_lhs[i - num_eq_];
      Rational rhs = i < num_eq_ ? eq_rhs[i] : ge_rhs[i - num_eq_];
      if (lhs.size() != num_vars_)
        throw std::invalid_argument("constraint arity mismatch");
      Vec& row = tableau_[i];
      for (std::size_t j = 0; j < num_vars_; ++j) {
        row[j] = lhs[j];
        row[num_vars_ + j] = -lhs[j];
      }
      if (i >= num_eq_) row[2 * num_vars_ + (i - num_eq_)] = -1;  // slack
      row[cols_ - 1] = rhs;
      if (rhs < 0) {
        flipped_[i] = true;
        for (auto& v : row) v = -v;
      }
      row[num_struct_ + i] = 1;  // artificial
      basis_[i] = num_struct_ + i;
    }
  }

  LpResult run() {
    LpResult result;
    if (!phase_one(result)) return result;
    drop_artificials();
    if (!objective_) {
      result.status = LpResult::Status::Feasible;
      result.solution = extract_solution();
      result.objective_value = 0;
      return result;
    }
    phase_two(result);
    return result;
  }

 private:
  // Minimizes the sum of artificials. Returns false (filling in the Farkas
  // certificate) when the optimum is positive.
  bool phase_one(LpResult& result) {
    const std::size_t m = tableau_.size();
    // Reduced-cost row for min sum z with all-artificial basis.
    cost_.assign(cols_, 0);
    for (std::size_t j = 0; j < num_struct_; ++j) {
      for (std::size_t i = 0; i < m; ++i) cost_[j] -= tableau_[i][j];
    }
    for (std::size_t i = 0; i < m; ++i)
      cost_[cols_ - 1] -= tableau_[i][cols_ - 1];
    // cost_[cols_-1] holds the negated objective value.

    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < num_struct_; ++j) {
        if (cost_[j] < 0) {
          enter = j;
          break;  // Bland: first eligible index
        }
      }
      if (enter == cols_) break;
      std::size_t leave = pick_leaving(enter);
      if (leave == tableau_.size())
        throw std::logic_error("phase one cannot be unbounded");
      pivot(leave, enter);
    }
    Rational optimum = -cost_[cols_ - 1];
    if (optimum == 0) return true;

    // Farkas multipliers from the reduced costs of the artificial columns:
    // y_i = 1 - cbar_i, then undo the row flips.
    result.status = LpResult::Status::Infeasible;
    result.farkas_eq.assign(num_eq_, 0);
    result.farkas_ge.assign(num_ge_, 0);
    for (std::size_t i = 0; i < tableau_.size(); ++i) {
      Rational y = Rational(1) - cost_[num_struct_ + i];
      if (flipped_[i]) y = -y;
      if (i < num_eq_)
        result.farkas_eq[i] = y;
      else
        result.farkas_ge[i - num_eq_] = y;
    }
    return false;
  }

  // Removes artificial columns after a feasible phase one, pivoting basic
  // artificials out (or deleting redundant rows).
  void drop_artificials() {
    for (std::size_t i = 0; i < tableau_.size();) {
      if (basis_[i] < num_struct_) {
        ++i;
        continue;
      }
      std::size_t enter = num_struct_;
      for (std::size_t j = 0; j < num_struct_; ++j) {
        if (tableau_[i][j] != 0) {
          enter = j;
          break;
        }
      }
      if (enter < num_struct_) {
        pivot(i, enter);
        ++i;
      } else {
        tableau_.erase(tableau_.begin() + i);
        basis_.erase(basis_.begin() + i);
      }
    }
    for (auto& row : tableau_) {
      row.erase(row.begin() + num_struct_, row.end() - 1);
    }
    cols_ = num_struct_ + 1;
  }

  void phase_two(LpResult& result) {
    const Vec& c = *objective_;
    if (c.size() != num_vars_)
      throw std::invalid_argument("objective arity mismatch");
    // Reduced costs for max c.x: cbar_j = c_j - cB . B^-1 A_j.
    auto struct_cost = [&](std::size_t j) -> Rational {
      if (j < num_vars_) return c[j];
      if (j < 2 * num_vars_) return -c[j - num_vars_];
      return 0;
    };
    // Cost row invariant: last entry is the negated objective value.
    cost_.assign(cols_, 0);
    for (std::size_t j = 0; j < num_struct_; ++j) {
      Rational v = struct_cost(j);
      for (std::size_t i = 0; i < tableau_.size(); ++i)
        v -= struct_cost(basis_[i]) * tableau_[i][j];
      cost_[j] = v;
    }
    Rational value = 0;
    for (std::size_t i = 0; i < tableau_.size(); ++i)
      value += struct_cost(basis_[i]) * tableau_[i][cols_ - 1];
    cost_[cols_ - 1] = -value;

    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < num_struct_; ++j) {
        if (cost_[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) {
        result.status = LpResult::Status::Feasible;
        result.solution = extract_solution();
        result.objective_value = -cost_[cols_ - 1];
        return;
      }
      std::size_t leave = pick_leaving(enter);
      if (leave == tableau_.size()) {
        // Unbounded ray: walk it far enough that the objective reaches at
        // least 1.
        Vec point = extract_full_point();
        Rational gain = cost_[enter];
        Rational current = -cost_[cols_ - 1];
        Rational target = current < 1 ? Rational(1) : current + 1;
        Rational lambda = (target - current) / gain;
        point[enter] += lambda;
        for (std::size_t i = 0; i < tableau_.size(); ++i)
          point[basis_[i]] -= lambda * tableau_[i][enter];
        result.status = LpResult::Status::Unbounded;
        result.solution.assign(num_vars_, 0);
        for (std::size_t j = 0; j < num_vars_; ++j)
          result.solution[j] = point[j] - point[num_vars_ + j];
        result.objective_value = target;
        return;
      }
      pivot(leave, enter);
    }
  }

  std::size_t pick_leaving(std::size_t enter) const {
    std::size_t best = tableau_.size();
    Rational best_ratio = 0;
    for (std::size_t i = 0; i < tableau_.size(); ++i) {
      const Rational& coeff = tableau_[i][enter];
      if (coeff <= 0) continue;
      Rational ratio = tableau_[i][cols_ - 1] / coeff;
      if (best == tableau_.size() || ratio < best_ratio ||
          (ratio == best_ratio && basis_[i] < basis_[best])) {
        best = i;
        best_ratio = ratio;
      }
    }
    return best;
  }

  void pivot(std::size_t row, std::size_t col) {
    Vec& prow = tableau_[row];
    Rational lead = prow[col];
    for (auto& v : prow) v /= lead;
    for (std::size_t i = 0; i < tableau_.size(); ++i) {
      if (i == row) continue;
      Rational factor = tableau_[i][col];
      if (factor == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        tableau_[i][j] -= factor * prow[j];
    }
    if (cost_.size() == cols_ && cost_[col] != 0) {
      Rational factor = cost_[col];
      for (std::size_t j = 0; j < cols_; ++j) cost_[j] -= factor * prow[j];
    }
    basis_[row] = col;
  }

  Vec extract_full_point() const {
    Vec point(cols_ - 1, 0);
    for (std::size_t i = 0; i < tableau_.size(); ++i)
      point[basis_[i]] = tableau_[i][cols_ - 1];
    return point;
  }

  Vec extract_solution() const {
    Vec point = extract_full_point();
    Vec x(num_vars_, 0);
    for (std::size_t j = 0; j < num_vars_; ++j)
      x[j] = point[j] - point[num_vars_ + j];
    return x;
  }

  std::size_t num_eq_;
  std::size_t num_ge_;
  std::size_t num_vars_;
  std::size_t num_struct_ = 0;
  std::size_t cols_ = 0;
  std::optional<Vec> objective_;
  Mat tableau_;
  Vec cost_;
  std::vector<bool> flipped_;
  std::vector<std::size_t> basis_;
};

Rational dot(const Vec& a, const Vec& b) {
  Rational r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

void verify_result(std::size_t n, const Mat& eq_lhs, const Vec& eq_rhs,
                   const Mat& ge_lhs, const Vec& ge_rhs,
                   const LpResult& result) {
  if (result.status == LpResult::Status::Infeasible) {
    Vec combo(n, 0);
    Rational rhs = 0;
    for (std::size_t i = 0; i < eq_lhs.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j)
        combo[j] += result.farkas_eq[i] * eq_lhs[i][j];
      rhs += result.farkas_eq[i] * eq_rhs[i];
    }
    for (std::size_t i = 0; i < ge_lhs.size(); ++i) {
      if (result.farkas_ge[i] < 0)
        throw std::logic_error("negative Farkas multiplier");
      for (std::size_t j = 0; j < n; ++j)
        combo[j] += result.farkas_ge[i] * ge_lhs[i][j];
      rhs += result.farkas_ge[i] * ge_rhs[i];
    }
    for (const auto& v : combo) {
      if (v != 0) throw std::logic_error("Farkas combination not zero");
    }
    if (rhs <= 0) throw std::logic_error("Farkas combination not positive");
    return;
  }
  for (std::size_t i = 0; i < eq_lhs.size(); ++i) {
    if (dot(eq_lhs[i], result.solution) != eq_rhs[i])
      throw std::logic_error("equality constraint violated by LP solution");
  }
  for (std::size_t i = 0; i < ge_lhs.size(); ++i) {
    if (dot(ge_lhs[i], result.solution) < ge_rhs[i])
      throw std::logic_error("inequality constraint violated by LP solution");
  }
}

}  // namespace

LpResult solve_lp(std::size_t num_vars, const Mat& eq_lhs, const Vec& eq_rhs,
                  const Mat& ge_lhs, const Vec& ge_rhs,
                  const std::optional<Vec>& objective) {
  if (eq_lhs.size() != eq_rhs.size() || ge_lhs.size() != ge_rhs.size())
    throw std::invalid_argument("constraint row/rhs count mismatch");
  Simplex simplex(num_vars, eq_lhs, eq_rhs, ge_lhs, ge_rhs, objective);
  LpResult result = simplex.run();
  verify_result(num_vars, eq_lhs, eq_rhs, ge_lhs, ge_rhs, result);
  return result;
}

}  // namespace seqsavage
