#pragma once

#include "sandkit/instance.hpp"
#include "sandkit/shortest_paths.hpp"

#include <cstdint>
#include <vector>

namespace sandkit {

// Exact minimum Steiner tree connecting {a, b, root}: the best median vertex
// under the shortest-path metric, with the three connecting paths returned
// as an edge set. Degenerate inputs (a == b, terminal == root) fall back to
// plain shortest paths.
struct SteinerTriple {
  Rat cost;
  std::vector<int> edges;  // sorted edge ids, cost == their total weight
};
SteinerTriple three_terminal_steiner(const Instance& inst, int a, int b);
SteinerTriple three_terminal_steiner(const Instance& inst, const ShortestPaths& apsp, int a,
                                     int b);

struct PairingResult {
  struct Pair {
    int green = -1;
    int blue = -1;
    Rat steiner_cost;
    std::vector<int> steiner_edges;
  };
  std::vector<Pair> pairs;
  Rat total_weight;
};

// Two-color matching algorithm: pad the colors, build the complete bipartite
// graph weighted by three-terminal Steiner costs, take a minimum-weight
// perfect matching and install the matched Steiner trees cumulatively.
// The plan indexes the ORIGINAL instance edges; pairing/steiner edge ids and
// dummy terminals live in `padded`.
struct MatchingSolveResult {
  CapacityPlan plan;
  PairingResult pairing;
  PaddedInstance padded;
};
MatchingSolveResult matching_solve(const Instance& inst);

// Route every terminal over one shortest-path tree from the root; each tree
// edge gets the maximum per-color count of terminals routing through it.
CapacityPlan shortest_path_solve(const Instance& inst);

// Minimum-weight perfect matching on a square cost matrix (Hungarian
// potentials method, exact rational arithmetic). Returns row -> column.
std::vector<int> hungarian_assignment(const std::vector<std::vector<Rat>>& cost);

// One sample from the FRT distribution over hierarchically separated trees:
// random permutation, random beta in [1,2), halving radii. The tree metric
// dominates the graph metric. Zero-distance classes are contracted into
// single leaves whose members list every merged node.
struct HstTree {
  struct Node {
    int parent = -1;
    Rat edge_up;  // length of the edge to the parent
    int level = 0;
    int representative = -1;       // graph node standing in for this cluster
    std::vector<int> children;
    std::vector<int> members;      // graph nodes below this cluster
  };
  std::vector<Node> nodes;  // nodes[0] is the root cluster
  std::vector<int> leaf_of;  // graph node -> leaf index

  Rat distance(int u, int v) const;  // tree metric between graph nodes
};
HstTree frt_embed(const Instance& inst, std::uint64_t seed);

// Install capacities on the sampled tree (exact there: every cut in a tree
// is a subtree cut) and map tree edges back to shortest graph paths between
// cluster representatives. Tree-shaped inputs skip the embedding and get the
// exact per-edge max-subtree-count installation directly.
CapacityPlan frt_solve(const Instance& inst, std::uint64_t seed);

}  // namespace sandkit
