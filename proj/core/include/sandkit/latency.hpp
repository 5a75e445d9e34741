#pragma once

#include "sandkit/instance.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace sandkit {

// Root-anchored vertex walk with prefix-cover lengths: t_j is the length of
// the shortest walk prefix containing at least j distinct terminals of every
// color, and the cost is sum_j t_j. Solutions are walks, not simple paths:
// the rounding below concatenates closed eulerified tree walks, so vertex
// and edge revisits are part of the objective's semantics here.
struct LatencyWalk {
  std::vector<int> vertices;       // starts at the root
  std::vector<Rat> prefix_lengths;  // t_1 <= ... <= t_m
  Rat cost;
};

// Tree containing the root that covers at least `target` terminals of every
// color (colors smaller than the target count as fully covered once all
// their terminals are in, mirroring dummy padding at the root).
struct CoverTree {
  std::vector<int> edges;  // sorted edge ids forming a tree through the root
  int target = 0;
  Rat weight;
};

struct WalkCostResult {
  Rat cost;
  std::vector<Rat> prefix_lengths;
};

// Latency operations require integer edge weights and throw otherwise.
// Coverage level of a prefix = min over colors of the padded covered count;
// consecutive walk vertices must be adjacent (cheapest parallel edge counts).
WalkCostResult walk_cost(const Instance& inst, const std::vector<int>& walk);

// Depth-first closed walk around the tree from the root; exactly twice the
// tree weight long and visits every tree vertex.
std::vector<int> eulerify(const Instance& inst, const CoverTree& tree);

// Grow a tree from the root, repeatedly attaching the cheapest shortest path
// to a terminal of a most-deficient color (ties by color index) until every
// color reaches the target.
CoverTree greedy_cover_tree(const Instance& inst, int target);

// Concatenate the eulerified trees in increasing scale order. Every tree
// must fit its scale (weight <= scale) and the last one must cover level m.
// The seed is reserved for sampling among candidate trees per scale; with
// the deterministic point-mass trees built here it has no effect.
LatencyWalk latency_round(const Instance& inst, const std::map<std::int64_t, CoverTree>& trees,
                          std::uint64_t seed);

// Scale ladder 2^0 .. 2^ceil(log2(2*MST)): per scale, the largest coverage
// target whose greedy tree fits, rounded via latency_round.
LatencyWalk latency_solve_greedy(const Instance& inst);

// Optimal walk for tiny instances (at most 9 distinct terminals) by brute
// force over terminal visit orders in the shortest-path metric closure.
LatencyWalk latency_exact(const Instance& inst);

}  // namespace sandkit
