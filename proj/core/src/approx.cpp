#include "sandkit/approx.hpp"

#include "sandkit/rng.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace sandkit {

SteinerTriple three_terminal_steiner(const Instance& inst, int a, int b) {
  ShortestPaths apsp(inst);
  return three_terminal_steiner(inst, apsp, a, b);
}

SteinerTriple three_terminal_steiner(const Instance& inst, const ShortestPaths& apsp, int a,
                                     int b) {
  const int r = inst.root;
  int best = -1;
  Rat best_sum;
  for (int m = 0; m < inst.node_count; ++m) {
    if (!apsp.reachable(m, a) || !apsp.reachable(m, b) || !apsp.reachable(m, r)) continue;
    Rat sum = apsp.dist(m, a) + apsp.dist(m, b) + apsp.dist(m, r);
    if (best < 0 || sum < best_sum) {
      best = m;
      best_sum = sum;
    }
  }
  if (best < 0) throw std::invalid_argument("terminal disconnected from the root");

  std::set<int> edges;
  for (int target : {a, b, r})
    for (int e : path_edges(apsp.from(best), target)) edges.insert(e);
  SteinerTriple out;
  out.edges.assign(edges.begin(), edges.end());
  out.cost = Rat(0);
  for (int e : out.edges) out.cost += inst.edges[e].weight;
  return out;
}

std::vector<int> hungarian_assignment(const std::vector<std::vector<Rat>>& cost) {
  const int n = static_cast<int>(cost.size());
  if (n == 0) return {};
  Rat inf(1);
  for (const auto& row : cost)
    for (const Rat& c : row) inf += c < 0 ? Rat(-c) : c;

  // Potentials method over rows/columns 1..n; p[j] is the row matched to
  // column j. Exact rational arithmetic keeps ties and optimality sharp.
  std::vector<Rat> u(n + 1, Rat(0)), v(n + 1, Rat(0)), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      Rat delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Rat cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j]) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

MatchingSolveResult matching_solve(const Instance& inst) {
  validate_instance(inst);
  if (inst.color_count() != 2)
    throw std::invalid_argument("matching_solve requires exactly 2 colors");

  MatchingSolveResult out;
  out.padded = pad_colors(inst);
  const Instance& padded = out.padded.inst;
  ShortestPaths apsp(padded);

  const auto& greens = padded.colors[0];
  const auto& blues = padded.colors[1];
  const int q = static_cast<int>(greens.size());

  std::vector<std::vector<Rat>> cost(q, std::vector<Rat>(q));
  std::vector<std::vector<SteinerTriple>> tri(q, std::vector<SteinerTriple>(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      tri[i][j] = three_terminal_steiner(padded, apsp, greens[i], blues[j]);
      cost[i][j] = tri[i][j].cost;
    }

  std::vector<int> match = hungarian_assignment(cost);

  CapacityPlan padded_plan = CapacityPlan::zeros(padded.edge_count());
  out.pairing.total_weight = Rat(0);
  for (int i = 0; i < q; ++i) {
    const SteinerTriple& t = tri[i][match[i]];
    PairingResult::Pair pair;
    pair.green = greens[i];
    pair.blue = blues[match[i]];
    pair.steiner_cost = t.cost;
    pair.steiner_edges = t.edges;
    out.pairing.total_weight += t.cost;
    for (int e : t.edges) padded_plan.values[e] += 1;
    out.pairing.pairs.push_back(std::move(pair));
  }

  // Project back to the original edge space; the tail holds only the
  // zero-weight dummy edges added by padding.
  out.plan = CapacityPlan::zeros(inst.edge_count());
  for (int e = 0; e < inst.edge_count(); ++e) out.plan.values[e] = padded_plan.values[e];
  return out;
}

CapacityPlan shortest_path_solve(const Instance& inst) {
  validate_instance(inst);
  SsspTree tree = dijkstra(inst, inst.root);
  for (const auto& color : inst.colors)
    for (int t : color)
      if (!tree.reached[t])
        throw std::invalid_argument("terminal " + std::to_string(t) +
                                    " is disconnected from the root");

  CapacityPlan plan = CapacityPlan::zeros(inst.edge_count());
  for (const auto& color : inst.colors) {
    std::vector<std::int64_t> load(inst.edge_count(), 0);
    for (int t : color)
      for (int v = t; v != inst.root; v = tree.parent_node[v]) ++load[tree.parent_edge[v]];
    for (int e = 0; e < inst.edge_count(); ++e)
      if (Rat(load[e]) > plan.values[e]) plan.values[e] = Rat(load[e]);
  }
  return plan;
}

Rat HstTree::distance(int u, int v) const {
  int a = leaf_of[u], b = leaf_of[v];
  Rat total(0);
  while (a != b) {
    // Leaves share a level, so walking the deeper-or-equal side first keeps
    // the two cursors level-aligned.
    if (nodes[a].level <= nodes[b].level) {
      total += nodes[a].edge_up;
      a = nodes[a].parent;
    } else {
      total += nodes[b].edge_up;
      b = nodes[b].parent;
    }
  }
  return total;
}

HstTree frt_embed(const Instance& inst, std::uint64_t seed) {
  validate_instance(inst);
  if (!is_connected(inst)) throw std::invalid_argument("graph is disconnected");
  ShortestPaths apsp(inst);
  const int n = inst.node_count;

  // Contract zero-distance classes; FRT needs positive distances.
  std::vector<int> cls(n, -1);
  std::vector<std::vector<int>> class_members;
  for (int v = 0; v < n; ++v) {
    if (cls[v] >= 0) continue;
    int id = static_cast<int>(class_members.size());
    class_members.push_back({});
    for (int u = 0; u < n; ++u)
      if (cls[u] < 0 && apsp.dist(v, u) == 0) {
        cls[u] = id;
        class_members[id].push_back(u);
      }
  }
  const int q = static_cast<int>(class_members.size());
  std::vector<int> rep(q);
  for (int c = 0; c < q; ++c) {
    rep[c] = class_members[c].front();
    for (int v : class_members[c])
      if (v == inst.root) rep[c] = v;
  }

  HstTree tree;
  tree.leaf_of.assign(n, -1);

  if (q == 1) {
    HstTree::Node node;
    node.members.resize(n);
    for (int v = 0; v < n; ++v) node.members[v] = v;
    node.representative = rep[0];
    tree.nodes.push_back(std::move(node));
    for (int v = 0; v < n; ++v) tree.leaf_of[v] = 0;
    return tree;
  }

  Rat d_min, d_max;
  bool first = true;
  for (int a = 0; a < q; ++a)
    for (int b = a + 1; b < q; ++b) {
      Rat d = apsp.dist(rep[a], rep[b]);
      if (first || d < d_min) d_min = d;
      if (first || d > d_max) d_max = d;
      first = false;
    }

  DetRng rng(seed);
  std::vector<int> pi(q);
  for (int i = 0; i < q; ++i) pi[i] = i;
  rng.shuffle(pi);
  double beta = 1.0 + rng.real01();  // uniform in [1,2)

  // Levels 0..L with assignment radius beta * 2^(i-1) * d_min; level L holds
  // one cluster, level 0 is zero-distance classes. Every cluster is split
  // down to level 0, and each child takes its assignment center (which may
  // lie outside the cluster) as representative — the mapped-back paths pay
  // for every level crossing, as in the original decomposition.
  double ratio = rat_to_double(Rat(d_max / d_min));
  int levels = 1;
  while (std::ldexp(1.0, levels - 1) < ratio) ++levels;

  std::vector<std::vector<double>> dd(q, std::vector<double>(q));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) dd[a][b] = rat_to_double(Rat(apsp.dist(rep[a], rep[b]) / d_min));

  auto center_of = [&](int u, double radius) {
    for (int w : pi)
      if (dd[u][w] <= radius) return w;
    return pi[0];  // unreachable: radius >= diameter at the top level
  };
  std::vector<int> pi_rank(q);
  for (int i = 0; i < q; ++i) pi_rank[pi[i]] = i;

  // Root cluster, centered on the first node of the permutation.
  {
    HstTree::Node root_node;
    root_node.level = levels;
    root_node.representative = rep[pi[0]];
    for (int c = 0; c < q; ++c)
      for (int v : class_members[c]) root_node.members.push_back(v);
    std::sort(root_node.members.begin(), root_node.members.end());
    tree.nodes.push_back(std::move(root_node));
  }

  struct WorkItem {
    int node;                  // index into tree.nodes
    std::vector<int> classes;  // class ids inside this cluster
  };
  std::vector<int> all_classes(q);
  for (int c = 0; c < q; ++c) all_classes[c] = c;
  std::vector<WorkItem> work{{0, all_classes}};

  while (!work.empty()) {
    WorkItem item = std::move(work.back());
    work.pop_back();
    int level = tree.nodes[item.node].level;
    if (level == 0) {
      for (int c : item.classes)
        for (int v : class_members[c]) tree.leaf_of[v] = item.node;
      continue;
    }
    double radius = beta * std::ldexp(1.0, level - 2);  // children sit at level-1
    std::map<int, std::vector<int>> by_center;
    for (int c : item.classes) by_center[center_of(c, radius)].push_back(c);

    std::vector<std::pair<int, std::vector<int>>> groups;
    for (auto& [center, classes] : by_center) groups.emplace_back(center, std::move(classes));
    std::sort(groups.begin(), groups.end(),
              [&](const auto& a, const auto& b) { return pi_rank[a.first] < pi_rank[b.first]; });

    for (auto& [center, classes] : groups) {
      HstTree::Node child;
      child.parent = item.node;
      child.level = level - 1;
      child.edge_up = Rat(d_min) * Rat(BigInt(1) << level);
      child.representative = rep[center];
      for (int c : classes)
        for (int v : class_members[c]) child.members.push_back(v);
      std::sort(child.members.begin(), child.members.end());
      int idx = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back(std::move(child));
      tree.nodes[item.node].children.push_back(idx);
      work.push_back(WorkItem{idx, std::move(classes)});
    }
  }
  return tree;
}

namespace {

// Exact installation for tree-shaped instances: each edge carries the
// maximum per-color count of terminals on its root-free side.
CapacityPlan tree_exact_plan(const Instance& inst) {
  std::vector<std::vector<std::pair<int, int>>> adj(inst.node_count);
  for (int e = 0; e < inst.edge_count(); ++e) {
    adj[inst.edges[e].u].emplace_back(inst.edges[e].v, e);
    adj[inst.edges[e].v].emplace_back(inst.edges[e].u, e);
  }
  // parent edges via BFS from the root
  std::vector<int> parent_edge(inst.node_count, -1), parent(inst.node_count, -1),
      order{inst.root};
  std::vector<char> seen(inst.node_count, 0);
  seen[inst.root] = 1;
  for (size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (auto [u, e] : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        parent[u] = v;
        parent_edge[u] = e;
        order.push_back(u);
      }
  }
  CapacityPlan plan = CapacityPlan::zeros(inst.edge_count());
  for (const auto& color : inst.colors) {
    std::vector<std::int64_t> load(inst.edge_count(), 0);
    for (int t : color)
      for (int v = t; v != inst.root; v = parent[v]) ++load[parent_edge[v]];
    for (int e = 0; e < inst.edge_count(); ++e)
      if (Rat(load[e]) > plan.values[e]) plan.values[e] = Rat(load[e]);
  }
  return plan;
}

}  // namespace

CapacityPlan frt_solve(const Instance& inst, std::uint64_t seed) {
  validate_instance(inst);
  if (!is_connected(inst)) throw std::invalid_argument("graph is disconnected");
  if (inst.edge_count() == inst.node_count - 1) return tree_exact_plan(inst);

  HstTree tree = frt_embed(inst, seed);
  ShortestPaths apsp(inst);
  CapacityPlan plan = CapacityPlan::zeros(inst.edge_count());

  // Tree edges: capacity = max per-color count on the side away from the
  // root, installed along the representative-to-representative path.
  for (size_t idx = 1; idx < tree.nodes.size(); ++idx) {
    const auto& node = tree.nodes[idx];
    std::vector<char> below(inst.node_count, 0);
    for (int v : node.members) below[v] = 1;
    bool root_below = below[inst.root] != 0;
    std::int64_t cap = 0;
    for (const auto& color : inst.colors) {
      std::int64_t cnt = 0;
      for (int t : color)
        if (below[t] != root_below) ++cnt;
      cap = std::max(cap, cnt);
    }
    if (cap == 0) continue;
    int a = node.representative, b = tree.nodes[node.parent].representative;
    if (a == b) continue;
    for (int e : path_edges(apsp.from(a), b)) plan.values[e] += cap;
  }

  // Zero-distance class members still need capacity to reach their leaf
  // representative (zero weight is not zero capacity).
  std::set<int> terminal_set;
  for (const auto& color : inst.colors) terminal_set.insert(color.begin(), color.end());
  for (int t : terminal_set) {
    int rep = tree.nodes[tree.leaf_of[t]].representative;
    if (rep == t) continue;
    for (int e : path_edges(apsp.from(rep), t)) plan.values[e] += 1;
  }
  return plan;
}

}  // namespace sandkit
