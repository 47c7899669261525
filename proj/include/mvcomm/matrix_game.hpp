#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mvcomm/error.hpp"

namespace mvcomm {

// Dense payoff matrix of a zero-sum game; entries are paid by the row player
// (the minimizer) to the column player (the maximizer).
class PayoffMatrix {
 public:
  PayoffMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {
    if (rows <= 0 || cols <= 0) fail(ErrorCode::InvalidGameSpec, "payoff matrix needs rows and columns");
  }
  PayoffMatrix(const std::vector<std::vector<double>>& rows)
      : PayoffMatrix(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size())) {
    for (int i = 0; i < rows_; ++i) {
      if (static_cast<int>(rows[i].size()) != cols_) fail(ErrorCode::DimensionMismatch, "ragged payoff matrix");
      std::copy(rows[i].begin(), rows[i].end(), a_.begin() + static_cast<std::ptrdiff_t>(i) * cols_);
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  // max_j of the row mixture's expected payoff: what the maximizer can force.
  double row_guarantee(const std::vector<double>& x) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < cols_; ++j) {
      double s = 0.0;
      for (int i = 0; i < rows_; ++i) s += x[i] * at(i, j);
      worst = std::max(worst, s);
    }
    return worst;
  }

  // min_i of the column mixture's expected payoff.
  double col_guarantee(const std::vector<double>& y) const {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (int j = 0; j < cols_; ++j) s += at(i, j) * y[j];
      best = std::min(best, s);
    }
    return best;
  }

 private:
  int rows_;
  int cols_;
  std::vector<double> a_;
};

struct MatrixGameSolution {
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  double upper = 0.0;  // row_guarantee(row_strategy) >= game value
  double lower = 0.0;  // col_guarantee(col_strategy) <= game value
  long iterations = 0;

  double gap() const { return std::max(0.0, upper - lower); }
};

// Fictitious play with uniform averaging, alternating updates: each round the
// row player best-responds to the column frequencies, then the column player
// best-responds to the updated row frequencies. Ties go to the lowest index.
// Stops once the duality gap of the empirical strategies is <= tol or after
// max_iters rounds; the returned strategies are the best bounds seen.
inline MatrixGameSolution fictitious_play(const PayoffMatrix& a, double tol, long max_iters) {
  const int r = a.rows(), c = a.cols();
  std::vector<double> row_payoff(r, 0.0);  // sum over rounds of A[i][j_t]
  std::vector<double> col_payoff(c, 0.0);  // sum over rounds of A[i_t][j]
  std::vector<long> row_count(r, 0), col_count(c, 0);

  MatrixGameSolution best;
  best.upper = std::numeric_limits<double>::infinity();
  best.lower = -std::numeric_limits<double>::infinity();
  int i_t = 0;
  long t = 0;
  while (t < std::max(1L, max_iters)) {
    ++t;
    ++row_count[i_t];
    for (int j = 0; j < c; ++j) col_payoff[j] += a.at(i_t, j);
    const int j_t = static_cast<int>(std::max_element(col_payoff.begin(), col_payoff.end()) - col_payoff.begin());
    const double upper = col_payoff[j_t] / static_cast<double>(t);
    if (upper < best.upper) {
      best.upper = upper;
      best.row_strategy.assign(r, 0.0);
      for (int i = 0; i < r; ++i) best.row_strategy[i] = static_cast<double>(row_count[i]) / static_cast<double>(t);
    }

    ++col_count[j_t];
    for (int i = 0; i < r; ++i) row_payoff[i] += a.at(i, j_t);
    i_t = static_cast<int>(std::min_element(row_payoff.begin(), row_payoff.end()) - row_payoff.begin());
    const double lower = row_payoff[i_t] / static_cast<double>(t);
    if (lower > best.lower) {
      best.lower = lower;
      best.col_strategy.assign(c, 0.0);
      for (int j = 0; j < c; ++j) best.col_strategy[j] = static_cast<double>(col_count[j]) / static_cast<double>(t);
    }
    if (best.upper - best.lower <= tol) break;
  }
  best.iterations = t;
  return best;
}

namespace detail {

inline void normalize_strategy(std::vector<double>& p) {
  double total = 0.0;
  for (double& x : p) {
    if (x < 0.0) x = 0.0;
    total += x;
  }
  if (total <= 0.0) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(p.size()));
    return;
  }
  for (double& x : p) x /= total;
}

}  // namespace detail

// Exact value by the primal simplex method with Bland's rule on
//   maximize sum(u)  s.t.  A'^T u <= 1, u >= 0,
// where A' is A shifted to be strictly positive. The optimum is 1/value(A');
// the row strategy is u normalized and the column strategy is read from the
// slack reduced costs (the dual solution).
inline MatrixGameSolution solve_zero_sum_lp(const PayoffMatrix& a) {
  const int r = a.rows(), c = a.cols();
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) lo = std::min(lo, a.at(i, j));
  const double shift = 1.0 - lo;

  const int width = r + c + 1;  // u vars, slacks, rhs
  const int rhs = r + c;
  std::vector<std::vector<double>> t(static_cast<std::size_t>(c) + 1, std::vector<double>(width, 0.0));
  std::vector<int> basis(c);
  for (int j = 0; j < c; ++j) {
    for (int i = 0; i < r; ++i) t[j][i] = a.at(i, j) + shift;
    t[j][r + j] = 1.0;
    t[j][rhs] = 1.0;
    basis[j] = r + j;
  }
  std::vector<double>& obj = t[c];
  for (int i = 0; i < r; ++i) obj[i] = -1.0;

  constexpr double kEps = 1e-11;
  for (long pivots = 0;; ++pivots) {
    int enter = -1;
    for (int k = 0; k < rhs; ++k)
      if (obj[k] < -kEps) {
        enter = k;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int row = 0; row < c; ++row) {
      if (t[row][enter] <= kEps) continue;
      const double ratio = t[row][rhs] / t[row][enter];
      const double tie = 1e-10 * (1.0 + std::abs(ratio));
      if (leave < 0 || ratio < best_ratio - tie || (ratio <= best_ratio + tie && basis[row] < basis[leave])) {
        best_ratio = ratio;
        leave = row;
      }
    }
    if (leave < 0) fail(ErrorCode::NoConvergence, "unbounded LP in matrix game solve");
    const double piv = t[leave][enter];
    for (double& x : t[leave]) x /= piv;
    for (int row = 0; row <= c; ++row) {
      if (row == leave) continue;
      const double f = t[row][enter];
      if (f == 0.0) continue;
      for (int k = 0; k < width; ++k) {
        t[row][k] -= f * t[leave][k];
        if (std::abs(t[row][k]) < 1e-13) t[row][k] = 0.0;
      }
    }
    basis[leave] = enter;
    if (pivots > 100000) fail(ErrorCode::NoConvergence, "simplex pivot limit exceeded");
  }

  MatrixGameSolution sol;
  sol.row_strategy.assign(r, 0.0);
  for (int row = 0; row < c; ++row)
    if (basis[row] < r) sol.row_strategy[basis[row]] = t[row][rhs];
  sol.col_strategy.assign(c, 0.0);
  for (int j = 0; j < c; ++j) sol.col_strategy[j] = obj[r + j];
  detail::normalize_strategy(sol.row_strategy);
  detail::normalize_strategy(sol.col_strategy);
  sol.upper = a.row_guarantee(sol.row_strategy);
  sol.lower = a.col_guarantee(sol.col_strategy);
  return sol;
}

}  // namespace mvcomm
