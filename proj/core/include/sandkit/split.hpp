#pragma once

#include "sandkit/flow.hpp"

#include <string>
#include <vector>

namespace sandkit {

enum class SplitKind { wide, thin };

// A maximal run of consecutive edges on a green walk that one blue walk
// shares. Wide means the two walks traverse the run in opposite directions,
// thin means the same direction. u is the endpoint nearer the green
// terminal, v the endpoint nearer the root.
struct Split {
  int u = -1;
  int v = -1;
  int green = -1;
  int blue = -1;
  SplitKind kind = SplitKind::thin;
  std::vector<int> edges;  // in green walk order
};

// Directed bicolored graph over splits and sharing terminals. Vertices
// 0..splits-1 are splits; vertex splits+i is sharing terminal terminals[i].
struct SplitGraphEdge {
  int from = -1;
  int to = -1;
  int color = 0;  // 0 green, 1 blue
};

struct SplitReport {
  std::vector<int> shared_edges;  // sorted edge ids
  std::vector<Split> splits;
  std::vector<int> terminals;  // sharing terminals (node ids), greens then blues
  std::vector<SplitGraphEdge> split_graph;
  // Complete alternating paths as split-graph vertex sequences
  // (terminal, split, ..., split, terminal).
  std::vector<std::vector<int>> alternating_paths;
  std::vector<std::pair<int, int>> fresh_pairs;  // (green node, blue node)
  // Paths that dead-ended at a split with no usable continuation; only
  // possible for routings that break the outdegree-0-or-2 law.
  std::vector<std::vector<int>> broken_paths;
  std::vector<int> non_sharing;  // terminals whose walks share no edge

  Rat w_blue, w_green, w_thin, w_wide;

  int vertex_of_split(int s) const { return s; }
  int vertex_of_terminal_index(int i) const { return static_cast<int>(splits.size()) + i; }
};

// Structural diagnostics for two-color routings in which each edge carries
// at most one walk per color (run it on expand_parallel output).
SplitReport split_report(const Instance& inst, const Routing& routing);

// Diagnostic text block: one line per split, then fresh pairs, non-sharing
// terminals and the weight decomposition.
std::string serialize_split_report(const SplitReport& report);

}  // namespace sandkit
