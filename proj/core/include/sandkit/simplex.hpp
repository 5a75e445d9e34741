#pragma once

#include <utility>
#include <vector>

namespace sandkit {

// Small dense LP solver for covering-style programs:
//   minimize c.x  subject to  sum_j a_ij x_j >= b_i  for every row,  x >= 0.
// Two-phase tableau simplex, Dantzig pricing with a Bland fallback once the
// iteration count suggests cycling. Feasibility tolerance 1e-7, reduced-cost
// optimality tolerance 1e-9.
struct LpProblem {
  int num_vars = 0;
  std::vector<double> objective;
  struct Row {
    std::vector<std::pair<int, double>> coeffs;  // (var index, coefficient)
    double rhs = 0.0;
  };
  std::vector<Row> rows;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpSolution {
  LpStatus status = LpStatus::optimal;
  double objective = 0.0;
  std::vector<double> x;
};

LpSolution simplex_solve(const LpProblem& problem);

}  // namespace sandkit
