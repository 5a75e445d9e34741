#pragma once

#include "sandkit/rational.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace sandkit {

// Weighted undirected multigraph with a root and k colors (terminal sets).
// Edges are identified by their dense index in `edges`; parallel edges are
// allowed and distinguished only by that index. Instances are immutable
// values once built: everything downstream shares them read-only, so
// concurrent solver invocations on one instance are safe.
struct Edge {
  int u = 0;
  int v = 0;
  Rat weight;
  bool operator==(const Edge&) const = default;
};

struct Instance {
  int node_count = 0;
  int root = 0;
  std::vector<Edge> edges;
  std::vector<std::vector<int>> colors;  // each sorted, unique, root-free

  int edge_count() const { return static_cast<int>(edges.size()); }
  int color_count() const { return static_cast<int>(colors.size()); }
  int max_color_size() const;
  bool operator==(const Instance&) const = default;
};

enum class PlanMode { integral, fractional };

// Per-edge capacity vector x, indexed by edge id. Integral mode requires
// every value to be an integer.
struct CapacityPlan {
  PlanMode mode = PlanMode::integral;
  std::vector<Rat> values;

  static CapacityPlan zeros(int edge_count, PlanMode mode = PlanMode::integral) {
    return CapacityPlan{mode, std::vector<Rat>(edge_count, Rat(0))};
  }
  bool operator==(const CapacityPlan&) const = default;
};

// One violated covering constraint: sum of x over delta(node_set) must be at
// least rhs, where rhs = |C_witness ∩ node_set|.
struct CutConstraint {
  std::vector<int> node_set;  // sorted, never contains the root
  int rhs = 0;
  int witness_color = -1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// Line-based instance format:
//   # comment
//   nodes <n>
//   root <id>
//   edge <u> <v> <w>      (declaration order defines the edge id)
//   color <i>: <id> ...   (i must appear as 0,1,... in order)
Instance parse_instance(std::istream& in);
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

// Plan format: "plan <integral|fractional> <edge-count>" followed by one
// "cap <edge-id> <value>" line per nonzero entry.
CapacityPlan parse_plan(std::istream& in, int expected_edges = -1);
CapacityPlan parse_plan(const std::string& text, int expected_edges = -1);
std::string serialize_plan(const CapacityPlan& plan);

// Throws std::invalid_argument when a structural invariant is broken.
void validate_instance(const Instance& inst);
void validate_plan(const Instance& inst, const CapacityPlan& plan);

// Exact installation cost sum_e w_e * x_e.
Rat plan_cost(const Instance& inst, const CapacityPlan& plan);

// Each edge replaced by max_i |C_i| unit-capacity copies of the same weight;
// source_edge maps new edge ids back to the original ones.
struct ExpandedInstance {
  Instance inst;
  std::vector<int> source_edge;
  int multiplicity = 1;
};
ExpandedInstance expand_parallel(const Instance& inst);

// Two-color balancing: dummy nodes at distance 0 from the root are appended
// to the smaller color until both colors have equal size. Original edge ids
// are preserved (new 0-weight root edges are appended after them).
struct PaddedInstance {
  Instance inst;
  std::vector<int> dummy_nodes;
  int original_edge_count = 0;
  int original_node_count = 0;
};
PaddedInstance pad_colors(const Instance& inst);

// Weight of a minimum spanning tree; throws when the graph is disconnected.
Rat mst_cost(const Instance& inst);

// Edge ids of one minimum spanning tree (deterministic tie-break by edge id).
std::vector<int> mst_edges(const Instance& inst);

bool is_connected(const Instance& inst);

}  // namespace sandkit
