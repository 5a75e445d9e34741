#include "sandkit/shortest_paths.hpp"

#include <algorithm>
#include <queue>

namespace sandkit {

SsspTree dijkstra(const Instance& inst, int source) {
  const int n = inst.node_count;
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge id)
  for (int e = 0; e < inst.edge_count(); ++e) {
    adj[inst.edges[e].u].emplace_back(inst.edges[e].v, e);
    adj[inst.edges[e].v].emplace_back(inst.edges[e].u, e);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end(), [](auto a, auto b) {
    return a.second < b.second;
  });

  SsspTree tree;
  tree.source = source;
  tree.dist.assign(n, Rat(0));
  tree.reached.assign(n, 0);
  tree.parent_edge.assign(n, -1);
  tree.parent_node.assign(n, -1);

  // Ties popped by node id, and relaxation happens only from finalized
  // nodes, so parents follow finalization order and can never form a cycle.
  using Item = std::pair<Rat, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  tree.reached[source] = 1;
  heap.emplace(Rat(0), source);
  std::vector<char> done(n, 0);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = 1;
    for (auto [u, e] : adj[v]) {
      if (done[u]) continue;
      Rat nd = d + inst.edges[e].weight;
      if (!tree.reached[u] || nd < tree.dist[u]) {
        tree.reached[u] = 1;
        tree.dist[u] = nd;
        tree.parent_edge[u] = e;
        tree.parent_node[u] = v;
        heap.emplace(nd, u);
      }
    }
  }
  return tree;
}

std::vector<int> path_edges(const SsspTree& tree, int v) {
  if (!tree.reached[v]) throw std::invalid_argument("node unreachable from source");
  std::vector<int> edges;
  while (v != tree.source) {
    edges.push_back(tree.parent_edge[v]);
    v = tree.parent_node[v];
  }
  std::reverse(edges.begin(), edges.end());
  return edges;
}

ShortestPaths::ShortestPaths(const Instance& inst) {
  trees_.reserve(inst.node_count);
  for (int v = 0; v < inst.node_count; ++v) trees_.push_back(dijkstra(inst, v));
}

}  // namespace sandkit
