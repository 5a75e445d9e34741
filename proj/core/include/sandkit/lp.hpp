#pragma once

#include "sandkit/flow.hpp"
#include "sandkit/instance.hpp"

#include <cstdint>
#include <vector>

namespace sandkit {

// Max-flow separation: for every color whose flow value under capacities x
// falls short of the color size by more than 1e-7, returns the cut
// constraint read off the minimum cut. Empty result means x is LP-feasible
// within tolerance.
std::vector<CutConstraint> separate(const Instance& inst, const CapacityPlan& x);

struct LpSolveResult {
  CapacityPlan plan;  // fractional
  Rat optimum;
  int cuts = 0;        // size of the final working cut set
  int iterations = 0;  // cutting-plane rounds
};

// Cutting-plane solve of the covering LP relaxation: seeded with singleton
// terminal cuts, then alternates simplex over the working cut set with
// max-flow separation until no violated cut remains. The returned plan
// satisfies every cut within 1e-7 and its cost is within 1e-6 relative of
// the LP optimum. Throws when a terminal is disconnected from the root.
LpSolveResult solve_lp(const Instance& inst);

struct ExactSolveResult {
  CapacityPlan plan;  // integral
  Rat optimum;        // incumbent cost (optimal when `optimal`)
  bool optimal = true;
  std::int64_t nodes = 0;   // branch-and-bound nodes processed
  double lower_bound = 0;   // proven global lower bound
  int cuts = 0;             // cut pool size at exit
};

// Branch-and-bound over the LP relaxation. Branching is on a most-fractional
// variable (ties to the lowest edge id), depth-first with a best-bound
// restart every 10,000 nodes. Capacities are capped at max_i |C_i| per edge:
// a single color never pushes more than its own demand through one edge, so
// the cap never cuts off an optimal solution. The incumbent starts from
// shortest_path_solve.
ExactSolveResult solve_exact(const Instance& inst, std::int64_t node_budget = 1000000);

}  // namespace sandkit
