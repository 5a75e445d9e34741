#include "sandkit/latency.hpp"

#include "sandkit/shortest_paths.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace sandkit {

namespace {

void require_integer_weights(const Instance& inst) {
  for (const Edge& e : inst.edges)
    if (!rat_is_integer(e.weight))
      throw std::invalid_argument("latency operations require integer edge weights");
}

int padded_level(const Instance& inst, const std::vector<char>& visited, int m) {
  int level = m;
  for (const auto& color : inst.colors) {
    int covered = 0;
    for (int t : color)
      if (visited[t]) ++covered;
    int color_level = covered < static_cast<int>(color.size()) ? covered : m;
    level = std::min(level, color_level);
  }
  return level;
}

}  // namespace

WalkCostResult walk_cost(const Instance& inst, const std::vector<int>& walk) {
  validate_instance(inst);
  require_integer_weights(inst);
  if (walk.empty() || walk.front() != inst.root)
    throw std::invalid_argument("walk must start at the root");
  for (int v : walk)
    if (v < 0 || v >= inst.node_count) throw std::invalid_argument("walk vertex out of range");

  // Cheapest parallel edge per vertex pair.
  std::map<std::pair<int, int>, Rat> cheapest;
  for (const Edge& e : inst.edges) {
    std::pair<int, int> key{std::min(e.u, e.v), std::max(e.u, e.v)};
    auto it = cheapest.find(key);
    if (it == cheapest.end() || e.weight < it->second) cheapest[key] = e.weight;
  }
  auto edge_weight = [&](int u, int v) -> const Rat* {
    auto it = cheapest.find({std::min(u, v), std::max(u, v)});
    return it == cheapest.end() ? nullptr : &it->second;
  };

  const int m = inst.max_color_size();
  std::vector<char> visited(inst.node_count, 0);
  visited[walk.front()] = 1;

  WalkCostResult out;
  out.cost = Rat(0);
  out.prefix_lengths.assign(m, Rat(0));
  int level = padded_level(inst, visited, m);
  for (int j = 1; j <= level; ++j) out.prefix_lengths[j - 1] = Rat(0);
  Rat length(0);
  for (size_t i = 1; i < walk.size(); ++i) {
    const Rat* w = edge_weight(walk[i - 1], walk[i]);
    if (!w)
      throw std::invalid_argument("walk vertices " + std::to_string(walk[i - 1]) + " and " +
                                  std::to_string(walk[i]) + " are not adjacent");
    length += *w;
    visited[walk[i]] = 1;
    int new_level = padded_level(inst, visited, m);
    for (int j = level + 1; j <= new_level; ++j) out.prefix_lengths[j - 1] = length;
    level = std::max(level, new_level);
    if (level == m) break;
  }
  if (level < m) throw std::invalid_argument("walk never covers level m");
  for (const Rat& t : out.prefix_lengths) out.cost += t;
  return out;
}

namespace {

void check_cover_tree(const Instance& inst, const CoverTree& tree,
                      std::vector<std::vector<std::pair<int, int>>>& adj,
                      std::vector<char>& in_tree) {
  adj.assign(inst.node_count, {});
  in_tree.assign(inst.node_count, 0);
  std::set<int> nodes;
  for (int e : tree.edges) {
    if (e < 0 || e >= inst.edge_count()) throw std::invalid_argument("tree edge out of range");
    adj[inst.edges[e].u].emplace_back(inst.edges[e].v, e);
    adj[inst.edges[e].v].emplace_back(inst.edges[e].u, e);
    nodes.insert(inst.edges[e].u);
    nodes.insert(inst.edges[e].v);
  }
  if (!tree.edges.empty() && !nodes.count(inst.root))
    throw std::invalid_argument("tree does not contain the root");
  // Connectivity + acyclicity from the root.
  std::vector<char> seen(inst.node_count, 0);
  std::queue<int> q;
  q.push(inst.root);
  seen[inst.root] = 1;
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (auto [u, e] : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        q.push(u);
      }
  }
  if (!tree.edges.empty() && reached != static_cast<int>(nodes.size()))
    throw std::invalid_argument("tree edges are not connected to the root");
  if (static_cast<int>(tree.edges.size()) != std::max(0, static_cast<int>(nodes.size()) - 1))
    throw std::invalid_argument("edge set is not a tree");
  in_tree = seen;
}

}  // namespace

std::vector<int> eulerify(const Instance& inst, const CoverTree& tree) {
  validate_instance(inst);
  std::vector<std::vector<std::pair<int, int>>> adj;
  std::vector<char> in_tree;
  check_cover_tree(inst, tree, adj, in_tree);
  for (auto& list : adj)
    std::sort(list.begin(), list.end());

  std::vector<int> walk{inst.root};
  std::vector<char> seen(inst.node_count, 0);
  seen[inst.root] = 1;
  // Iterative DFS; each tree edge is traversed once down and once back up.
  struct Frame {
    int node;
    size_t next = 0;
  };
  std::vector<Frame> stack{{inst.root, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next < adj[f.node].size()) {
      auto [u, e] = adj[f.node][f.next++];
      if (!seen[u]) {
        seen[u] = 1;
        walk.push_back(u);
        stack.push_back(Frame{u, 0});
      }
    } else {
      stack.pop_back();
      if (!stack.empty()) walk.push_back(stack.back().node);
    }
  }
  return walk;
}

namespace {

struct MultiSourceSp {
  std::vector<Rat> dist;
  std::vector<char> reached;
  std::vector<int> parent_node, parent_edge;
};

MultiSourceSp multi_source_dijkstra(const Instance& inst, const std::vector<char>& sources) {
  const int n = inst.node_count;
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int e = 0; e < inst.edge_count(); ++e) {
    adj[inst.edges[e].u].emplace_back(inst.edges[e].v, e);
    adj[inst.edges[e].v].emplace_back(inst.edges[e].u, e);
  }
  for (auto& list : adj)
    std::sort(list.begin(), list.end(), [](auto a, auto b) { return a.second < b.second; });

  MultiSourceSp sp;
  sp.dist.assign(n, Rat(0));
  sp.reached.assign(n, 0);
  sp.parent_node.assign(n, -1);
  sp.parent_edge.assign(n, -1);
  using Item = std::pair<Rat, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (int v = 0; v < n; ++v)
    if (sources[v]) {
      sp.reached[v] = 1;
      heap.emplace(Rat(0), v);
    }
  std::vector<char> done(n, 0);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = 1;
    for (auto [u, e] : adj[v]) {
      if (done[u]) continue;
      Rat nd = d + inst.edges[e].weight;
      if (!sp.reached[u] || nd < sp.dist[u]) {
        sp.reached[u] = 1;
        sp.dist[u] = nd;
        sp.parent_node[u] = v;
        sp.parent_edge[u] = e;
        heap.emplace(nd, u);
      }
    }
  }
  return sp;
}

}  // namespace

CoverTree greedy_cover_tree(const Instance& inst, int target) {
  validate_instance(inst);
  require_integer_weights(inst);
  if (target < 0) throw std::invalid_argument("negative coverage target");

  CoverTree tree;
  tree.target = target;
  tree.weight = Rat(0);
  if (target == 0 || inst.color_count() == 0) return tree;

  // Reachability guard: the padded requirement for color i is
  // min(target, |C_i|) reachable terminals.
  SsspTree from_root = dijkstra(inst, inst.root);
  for (int i = 0; i < inst.color_count(); ++i) {
    int reachable = 0;
    for (int t : inst.colors[i])
      if (from_root.reached[t]) ++reachable;
    if (reachable < std::min<int>(target, inst.colors[i].size()))
      throw std::invalid_argument("color " + std::to_string(i) + " has fewer than " +
                                  std::to_string(target) + " reachable terminals");
  }

  std::vector<char> in_tree(inst.node_count, 0);
  in_tree[inst.root] = 1;
  std::vector<int> covered(inst.color_count(), 0);
  auto need = [&](int i) {
    return std::min<int>(target, inst.colors[i].size());
  };
  auto recount = [&]() {
    for (int i = 0; i < inst.color_count(); ++i) {
      covered[i] = 0;
      for (int t : inst.colors[i])
        if (in_tree[t]) ++covered[i];
    }
  };
  recount();

  while (true) {
    int color = -1;
    for (int i = 0; i < inst.color_count(); ++i) {
      if (covered[i] >= need(i)) continue;
      if (color < 0 || covered[i] < covered[color]) color = i;
    }
    if (color < 0) break;

    MultiSourceSp sp = multi_source_dijkstra(inst, in_tree);
    int pick = -1;
    for (int t : inst.colors[color]) {
      if (in_tree[t] || !sp.reached[t]) continue;
      if (pick < 0 || sp.dist[t] < sp.dist[pick] || (sp.dist[t] == sp.dist[pick] && t < pick))
        pick = t;
    }
    if (pick < 0) throw std::logic_error("deficient color has no reachable terminal left");

    for (int v = pick; sp.parent_edge[v] >= 0; v = sp.parent_node[v]) {
      tree.edges.push_back(sp.parent_edge[v]);
      tree.weight += inst.edges[sp.parent_edge[v]].weight;
      in_tree[v] = 1;
    }
    in_tree[pick] = 1;
    recount();
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

LatencyWalk latency_round(const Instance& inst, const std::map<std::int64_t, CoverTree>& trees,
                          std::uint64_t /*seed: reserved for sampled tree distributions*/) {
  validate_instance(inst);
  require_integer_weights(inst);
  if (trees.empty()) throw std::invalid_argument("no trees given");

  for (const auto& [scale, tree] : trees) {
    if (scale <= 0) throw std::invalid_argument("scales must be positive");
    if (tree.weight > Rat(scale))
      throw std::invalid_argument("tree at scale " + std::to_string(scale) +
                                  " exceeds its weight budget");
  }

  // The final tree must cover level m.
  const int m = inst.max_color_size();
  {
    const CoverTree& last = trees.rbegin()->second;
    std::vector<std::vector<std::pair<int, int>>> adj;
    std::vector<char> in_tree;
    check_cover_tree(inst, last, adj, in_tree);
    in_tree[inst.root] = 1;
    if (padded_level(inst, in_tree, m) < m)
      throw std::invalid_argument("final tree does not cover level m");
  }

  std::vector<int> walk{inst.root};
  for (const auto& [scale, tree] : trees) {
    std::vector<int> part = eulerify(inst, tree);
    walk.insert(walk.end(), part.begin() + 1, part.end());  // skip the repeated root
  }

  WalkCostResult eval = walk_cost(inst, walk);
  LatencyWalk out;
  out.vertices = std::move(walk);
  out.prefix_lengths = std::move(eval.prefix_lengths);
  out.cost = eval.cost;
  return out;
}

LatencyWalk latency_solve_greedy(const Instance& inst) {
  validate_instance(inst);
  require_integer_weights(inst);
  const int m = inst.max_color_size();
  if (m == 0) {
    LatencyWalk out;
    out.vertices = {inst.root};
    out.cost = Rat(0);
    return out;
  }
  // Reachability (and weight) checks happen inside greedy_cover_tree.
  CoverTree full = greedy_cover_tree(inst, m);
  if (full.weight == 0) {
    std::map<std::int64_t, CoverTree> trees{{1, full}};
    return latency_round(inst, trees, 0);
  }

  Rat ladder_top = mst_cost(inst) * 2;  // upper bound on any needed tree
  std::int64_t top_scale = 1;
  while (Rat(top_scale) < ladder_top) top_scale *= 2;

  std::vector<CoverTree> by_target(m + 1);
  std::vector<char> built(m + 1, 0);
  auto tree_for = [&](int j) -> const CoverTree& {
    if (!built[j]) {
      by_target[j] = greedy_cover_tree(inst, j);
      built[j] = 1;
    }
    return by_target[j];
  };

  std::map<std::int64_t, CoverTree> trees;
  for (std::int64_t scale = 1;; scale *= 2) {
    // Largest target whose greedy tree fits within this scale.
    int lo = 0, hi = m, best = 0;
    while (lo <= hi) {
      int mid = (lo + hi) / 2;
      if (tree_for(mid).weight <= Rat(scale)) {
        best = mid;
        lo = mid + 1;
      } else {
        hi = mid - 1;
      }
    }
    trees[scale] = tree_for(best);
    if (scale >= top_scale) break;
  }

  // Force full coverage at the top scale; the MST always fits there.
  if (trees[top_scale].target < m) {
    if (tree_for(m).weight <= Rat(top_scale)) {
      trees[top_scale] = tree_for(m);
    } else {
      CoverTree mst_tree;
      mst_tree.edges = mst_edges(inst);
      mst_tree.target = m;
      mst_tree.weight = mst_cost(inst);
      trees[top_scale] = std::move(mst_tree);
    }
  }
  return latency_round(inst, trees, 0);
}

LatencyWalk latency_exact(const Instance& inst) {
  validate_instance(inst);
  require_integer_weights(inst);

  std::set<int> terminal_set;
  for (const auto& color : inst.colors) terminal_set.insert(color.begin(), color.end());
  std::vector<int> terminals(terminal_set.begin(), terminal_set.end());
  if (terminals.size() > 9)
    throw std::invalid_argument("latency_exact handles at most 9 terminals");

  const int m = inst.max_color_size();
  LatencyWalk out;
  if (m == 0) {
    out.vertices = {inst.root};
    out.cost = Rat(0);
    return out;
  }

  ShortestPaths apsp(inst);
  for (int t : terminals)
    if (!apsp.reachable(inst.root, t))
      throw std::invalid_argument("terminal " + std::to_string(t) +
                                  " is disconnected from the root");

  // Full coverage requires visiting every terminal, so optimal walks are
  // orderings of the terminal set joined by shortest paths.
  std::vector<int> perm = terminals;
  std::vector<int> best_perm;
  Rat best_cost;
  bool have_best = false;
  std::sort(perm.begin(), perm.end());
  do {
    Rat length(0), cost(0);
    std::vector<char> visited(inst.node_count, 0);
    visited[inst.root] = 1;
    int level = padded_level(inst, visited, m);
    int prev = inst.root;
    bool valid = true;
    for (int t : perm) {
      length += apsp.dist(prev, t);
      visited[t] = 1;
      int new_level = padded_level(inst, visited, m);
      for (int j = level + 1; j <= new_level; ++j) cost += length;
      level = new_level;
      prev = t;
      if (have_best && cost > best_cost) {
        valid = false;
        break;
      }
    }
    if (valid && level == m && (!have_best || cost < best_cost)) {
      best_cost = cost;
      best_perm = perm;
      have_best = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!have_best) throw std::logic_error("no feasible visiting order found");

  std::vector<int> walk{inst.root};
  int prev = inst.root;
  for (int t : best_perm) {
    const SsspTree& tree = apsp.from(prev);
    std::vector<int> hops;
    for (int v = t; v != prev; v = tree.parent_node[v]) hops.push_back(v);
    std::reverse(hops.begin(), hops.end());
    walk.insert(walk.end(), hops.begin(), hops.end());
    prev = t;
  }
  WalkCostResult eval = walk_cost(inst, walk);
  out.vertices = std::move(walk);
  out.prefix_lengths = std::move(eval.prefix_lengths);
  out.cost = eval.cost;
  return out;
}

}  // namespace sandkit
