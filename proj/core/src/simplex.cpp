#include "sandkit/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sandkit {

namespace {

constexpr double kFeasTol = 1e-7;
constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr int kBlandAfter = 2000;
constexpr int kMaxIters = 200000;

struct Tableau {
  int rows = 0;
  int cols = 0;  // excludes the rhs column
  std::vector<std::vector<double>> t;
  std::vector<double> obj;  // reduced-cost row
  double obj_value = 0.0;
  std::vector<int> basis;

  double& at(int r, int c) { return t[r][c]; }
  double& rhs(int r) { return t[r][cols]; }

  void pivot(int row, int col) {
    double p = t[row][col];
    for (int c = 0; c <= cols; ++c) t[row][c] /= p;
    for (int r = 0; r < rows; ++r) {
      if (r == row || std::fabs(t[r][col]) < 1e-14) continue;
      double f = t[r][col];
      for (int c = 0; c <= cols; ++c) t[r][c] -= f * t[row][c];
    }
    double f = obj[col];
    if (std::fabs(f) > 1e-14) {
      for (int c = 0; c < cols; ++c) obj[c] -= f * t[row][c];
      obj_value -= f * t[row][cols];
      obj[col] = 0.0;
    }
    basis[row] = col;
  }

  // Returns optimal/unbounded/iteration_limit for the current objective row.
  LpStatus optimize(const std::vector<char>& banned) {
    for (int iter = 0; iter < kMaxIters; ++iter) {
      bool bland = iter > kBlandAfter;
      int col = -1;
      double best = -kCostTol;
      for (int c = 0; c < cols; ++c) {
        if (banned[c]) continue;
        if (obj[c] < best) {
          col = c;
          best = obj[c];
          if (bland) break;
        }
      }
      if (col < 0) return LpStatus::optimal;

      int row = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows; ++r) {
        if (t[r][col] <= kPivotTol) continue;
        double ratio = t[r][cols] / t[r][col];
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && (row < 0 || basis[r] < basis[row]))) {
          best_ratio = ratio;
          row = r;
        }
      }
      if (row < 0) return LpStatus::unbounded;
      pivot(row, col);
    }
    return LpStatus::iteration_limit;
  }
};

}  // namespace

LpSolution simplex_solve(const LpProblem& problem) {
  const int n = problem.num_vars;
  const int m = static_cast<int>(problem.rows.size());
  LpSolution sol;
  if (m == 0) {
    // x = 0 is optimal for covering objectives with x >= 0 and c >= 0; with
    // negative costs the problem is unbounded.
    sol.x.assign(n, 0.0);
    for (double c : problem.objective)
      if (c < -kCostTol) {
        sol.status = LpStatus::unbounded;
        return sol;
      }
    sol.status = LpStatus::optimal;
    return sol;
  }

  // Layout: structural vars, then one slack/surplus per row, then one
  // artificial per >=-row with nonnegative rhs.
  int total = n + m;
  std::vector<int> artificial_col(m, -1);
  for (int r = 0; r < m; ++r)
    if (problem.rows[r].rhs >= 0) artificial_col[r] = total++;

  Tableau tab;
  tab.rows = m;
  tab.cols = total;
  tab.t.assign(m, std::vector<double>(total + 1, 0.0));
  tab.basis.assign(m, -1);

  for (int r = 0; r < m; ++r) {
    const auto& row = problem.rows[r];
    double sign = row.rhs >= 0 ? 1.0 : -1.0;  // negate rows with negative rhs
    for (auto [c, a] : row.coeffs) tab.t[r][c] += sign * a;
    tab.t[r][total] = sign * row.rhs;
    tab.t[r][n + r] = -sign;  // surplus for kept rows, slack for negated ones
    if (artificial_col[r] >= 0) {
      tab.t[r][artificial_col[r]] = 1.0;
      tab.basis[r] = artificial_col[r];
    } else {
      tab.basis[r] = n + r;
    }
  }

  std::vector<char> banned(total, 0);

  // Phase 1: minimize the sum of artificials.
  tab.obj.assign(total, 0.0);
  tab.obj_value = 0.0;
  for (int r = 0; r < m; ++r)
    if (artificial_col[r] >= 0) {
      for (int c = 0; c < total; ++c) tab.obj[c] -= tab.t[r][c];
      tab.obj_value -= tab.t[r][total];
      tab.obj[artificial_col[r]] = 0.0;
    }
  LpStatus st = tab.optimize(banned);
  if (st != LpStatus::optimal) {
    sol.status = st == LpStatus::unbounded ? LpStatus::infeasible : st;
    return sol;
  }
  if (-tab.obj_value > kFeasTol) {
    sol.status = LpStatus::infeasible;
    return sol;
  }

  // Pivot leftover artificials out of the basis where possible; ban them.
  for (int r = 0; r < m; ++r) {
    if (tab.basis[r] < n + m) continue;
    int col = -1;
    for (int c = 0; c < n + m && col < 0; ++c)
      if (std::fabs(tab.t[r][c]) > 1e-7) col = c;
    if (col >= 0) tab.pivot(r, col);
  }
  for (int r = 0; r < m; ++r)
    if (artificial_col[r] >= 0) banned[artificial_col[r]] = 1;

  // Phase 2: original objective.
  tab.obj.assign(total, 0.0);
  tab.obj_value = 0.0;
  for (int c = 0; c < n; ++c) tab.obj[c] = problem.objective[c];
  for (int r = 0; r < m; ++r) {
    int b = tab.basis[r];
    if (b < n && std::fabs(problem.objective[b]) > 1e-14) {
      double f = problem.objective[b];
      for (int c = 0; c < total; ++c) tab.obj[c] -= f * tab.t[r][c];
      tab.obj_value -= f * tab.t[r][total];
      tab.obj[b] = 0.0;
    }
  }
  st = tab.optimize(banned);
  if (st != LpStatus::optimal) {
    sol.status = st;
    return sol;
  }

  sol.status = LpStatus::optimal;
  sol.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r)
    if (tab.basis[r] < n) sol.x[tab.basis[r]] = std::max(0.0, tab.t[r][total]);
  sol.objective = 0.0;
  for (int c = 0; c < n; ++c) sol.objective += problem.objective[c] * sol.x[c];
  return sol;
}

}  // namespace sandkit
