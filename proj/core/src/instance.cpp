#include "sandkit/instance.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace sandkit {

int Instance::max_color_size() const {
  size_t m = 0;
  for (const auto& c : colors) m = std::max(m, c.size());
  return static_cast<int>(m);
}

void validate_instance(const Instance& inst) {
  if (inst.node_count <= 0) throw std::invalid_argument("node count must be positive");
  if (inst.root < 0 || inst.root >= inst.node_count)
    throw std::invalid_argument("root out of range");
  for (const Edge& e : inst.edges) {
    if (e.u < 0 || e.u >= inst.node_count || e.v < 0 || e.v >= inst.node_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop rejected");
    if (e.weight < 0) throw std::invalid_argument("negative edge weight");
  }
  for (const auto& color : inst.colors) {
    if (color.empty()) throw std::invalid_argument("empty color");
    if (!std::is_sorted(color.begin(), color.end()) ||
        std::adjacent_find(color.begin(), color.end()) != color.end())
      throw std::invalid_argument("color must be sorted and duplicate-free");
    for (int id : color) {
      if (id < 0 || id >= inst.node_count) throw std::invalid_argument("color node out of range");
      if (id == inst.root) throw std::invalid_argument("color contains root");
    }
  }
}

void validate_plan(const Instance& inst, const CapacityPlan& plan) {
  if (static_cast<int>(plan.values.size()) != inst.edge_count())
    throw std::invalid_argument("plan length does not match instance edge count");
  for (const Rat& v : plan.values) {
    if (v < 0) throw std::invalid_argument("negative capacity");
    if (plan.mode == PlanMode::integral && !rat_is_integer(v))
      throw std::invalid_argument("non-integer capacity in integral plan");
  }
}

Rat plan_cost(const Instance& inst, const CapacityPlan& plan) {
  validate_plan(inst, plan);
  Rat total(0);
  for (int e = 0; e < inst.edge_count(); ++e) total += inst.edges[e].weight * plan.values[e];
  return total;
}

ExpandedInstance expand_parallel(const Instance& inst) {
  validate_instance(inst);
  ExpandedInstance out;
  out.multiplicity = std::max(1, inst.max_color_size());
  out.inst.node_count = inst.node_count;
  out.inst.root = inst.root;
  out.inst.colors = inst.colors;
  out.inst.edges.reserve(inst.edges.size() * out.multiplicity);
  for (int e = 0; e < inst.edge_count(); ++e)
    for (int c = 0; c < out.multiplicity; ++c) {
      out.inst.edges.push_back(inst.edges[e]);
      out.source_edge.push_back(e);
    }
  return out;
}

PaddedInstance pad_colors(const Instance& inst) {
  validate_instance(inst);
  if (inst.color_count() != 2)
    throw std::invalid_argument("pad_colors requires exactly 2 colors");
  PaddedInstance out;
  out.inst = inst;
  out.original_edge_count = inst.edge_count();
  out.original_node_count = inst.node_count;
  int small = inst.colors[0].size() <= inst.colors[1].size() ? 0 : 1;
  auto deficit =
      static_cast<int>(inst.colors[1 - small].size()) - static_cast<int>(inst.colors[small].size());
  for (int i = 0; i < deficit; ++i) {
    int dummy = out.inst.node_count++;
    out.dummy_nodes.push_back(dummy);
    out.inst.edges.push_back(Edge{out.inst.root, dummy, Rat(0)});
    out.inst.colors[small].push_back(dummy);
  }
  return out;
}

namespace {

struct DsuForest {
  std::vector<int> parent;
  explicit DsuForest(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

std::vector<int> mst_edges(const Instance& inst) {
  validate_instance(inst);
  std::vector<int> order(inst.edge_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return inst.edges[a].weight < inst.edges[b].weight;
  });
  DsuForest dsu(inst.node_count);
  std::vector<int> tree;
  for (int e : order)
    if (dsu.unite(inst.edges[e].u, inst.edges[e].v)) tree.push_back(e);
  if (static_cast<int>(tree.size()) != inst.node_count - 1)
    throw std::invalid_argument("graph is disconnected");
  std::sort(tree.begin(), tree.end());
  return tree;
}

Rat mst_cost(const Instance& inst) {
  Rat total(0);
  for (int e : mst_edges(inst)) total += inst.edges[e].weight;
  return total;
}

bool is_connected(const Instance& inst) {
  if (inst.node_count == 0) return false;
  std::vector<std::vector<int>> adj(inst.node_count);
  for (const Edge& e : inst.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(inst.node_count, 0);
  std::queue<int> q;
  q.push(inst.root);
  seen[inst.root] = 1;
  int count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        q.push(u);
      }
  }
  return count == inst.node_count;
}

}  // namespace sandkit
