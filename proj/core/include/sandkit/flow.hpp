#pragma once

#include "sandkit/instance.hpp"

#include <map>
#include <utility>
#include <vector>

namespace sandkit {

// Directed capacitated graph for the max-flow primitive.
struct ArcGraph {
  struct Arc {
    int from = 0;
    int to = 0;
    Rat cap;
  };
  int node_count = 0;
  std::vector<Arc> arcs;
};

// value is exact whenever the capacities scale to integers that fit in
// 64 bits (always the case for integral plans); otherwise it comes from a
// floating-point run accurate to ~1e-9. min_cut is the source side of a
// minimum cut, super-source excluded, sorted.
struct MaxFlowResult {
  double value = 0.0;
  bool exact = true;
  std::vector<int> min_cut;
};

MaxFlowResult max_flow(const ArcGraph& graph, const std::vector<std::pair<int, Rat>>& supplies,
                       int sink);

struct FeasibilityResult {
  bool feasible = true;
  CutConstraint violation;  // populated when infeasible
};

// A plan is feasible iff for every color the max flow from unit supplies at
// its terminals to the root equals the color size, under undirected
// capacities x_e (modeled as antiparallel arc pairs with the usual
// cancellation semantics). Exact for integral plans, tolerance 1e-7 for
// fractional ones. On failure reports a most-violated cut.
FeasibilityResult check_feasible(const Instance& inst, const CapacityPlan& plan);

// One step of a terminal-to-root walk: edge id plus traversal direction
// (forward means u -> v as stored in the instance).
struct WalkStep {
  int edge = -1;
  bool forward = true;
  bool operator==(const WalkStep&) const = default;
};

// Per color, a terminal -> walk map. Within one color the number of walks
// crossing an edge never exceeds the plan capacity.
struct Routing {
  std::vector<std::map<int, std::vector<WalkStep>>> walks;  // index = color
};

// Integral flow decomposition of a feasible integral plan into one cycle-free
// terminal-to-root walk per terminal per color. Throws on infeasible plans.
Routing extract_routing(const Instance& inst, const CapacityPlan& plan);

// Checks walk endpoints, adjacency and per-color capacity usage; throws
// std::invalid_argument describing the first violation.
void validate_routing(const Instance& inst, const CapacityPlan& plan, const Routing& routing);

}  // namespace sandkit
