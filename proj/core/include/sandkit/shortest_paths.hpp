#pragma once

#include "sandkit/instance.hpp"

#include <optional>
#include <vector>

namespace sandkit {

// Single-source shortest paths with exact rational lengths. Parent choices
// are deterministic: among optimal predecessors, the incoming edge with the
// lowest id wins. Unreachable nodes have reached == false.
struct SsspTree {
  int source = -1;
  std::vector<Rat> dist;
  std::vector<char> reached;
  std::vector<int> parent_edge;  // -1 at the source and unreachable nodes
  std::vector<int> parent_node;
};

SsspTree dijkstra(const Instance& inst, int source);

// Edge ids of the tree path source -> v, in walk order. Empty when v is the
// source; throws when v is unreachable.
std::vector<int> path_edges(const SsspTree& tree, int v);

// All-pairs cache, built once per instance and shared read-only.
class ShortestPaths {
 public:
  explicit ShortestPaths(const Instance& inst);

  const SsspTree& from(int source) const { return trees_[source]; }
  const Rat& dist(int u, int v) const { return trees_[u].dist[v]; }
  bool reachable(int u, int v) const { return trees_[u].reached[v] != 0; }

 private:
  std::vector<SsspTree> trees_;
};

}  // namespace sandkit
