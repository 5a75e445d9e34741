#include "sandkit/generators.hpp"
#include "sandkit/latency.hpp"
#include "sandkit/rng.hpp"
#include "sandkit/shortest_paths.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <map>
#include <queue>
#include <set>

using namespace sandkit;
using namespace sandkit::testutil;

namespace {

Instance unit_path(int colors_mode) {
  // r - a - b with unit weights; colors_mode 0: one color {a,b},
  // colors_mode 1: colors {a}, {b}.
  Instance inst;
  inst.node_count = 3;
  inst.root = 0;
  inst.edges = {Edge{0, 1, Rat(1)}, Edge{1, 2, Rat(1)}};
  if (colors_mode == 0)
    inst.colors = {{1, 2}};
  else
    inst.colors = {{1}, {2}};
  return inst;
}

// Independent oracle: Dijkstra over (vertex, visited-terminal-set) states.
// A step of length l taken at coverage level c costs l * (m - c), which
// telescopes to sum_j t_j.
Rat state_dijkstra_cost(const Instance& inst) {
  std::set<int> terminal_set;
  for (const auto& color : inst.colors) terminal_set.insert(color.begin(), color.end());
  std::vector<int> terminals(terminal_set.begin(), terminal_set.end());
  const int tn = static_cast<int>(terminals.size());
  const int m = inst.max_color_size();
  if (m == 0) return Rat(0);

  auto term_index = [&](int v) {
    for (int i = 0; i < tn; ++i)
      if (terminals[i] == v) return i;
    return -1;
  };
  auto level_of = [&](std::uint32_t mask) {
    int level = m;
    for (const auto& color : inst.colors) {
      int covered = 0;
      for (int t : color)
        if (mask & (1u << term_index(t))) ++covered;
      level = std::min(level, covered < static_cast<int>(color.size()) ? covered : m);
    }
    return level;
  };

  std::vector<std::vector<std::pair<int, Rat>>> adj(inst.node_count);
  for (const Edge& e : inst.edges) {
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
  }

  std::map<std::pair<int, std::uint32_t>, Rat> dist;
  using Item = std::pair<Rat, std::pair<int, std::uint32_t>>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  std::uint32_t start_mask = 0;
  int ri = term_index(inst.root);
  if (ri >= 0) start_mask |= 1u << ri;
  dist[{inst.root, start_mask}] = Rat(0);
  heap.push({Rat(0), {inst.root, start_mask}});
  const std::uint32_t full = (1u << tn) - 1;
  while (!heap.empty()) {
    auto [d, state] = heap.top();
    heap.pop();
    auto it = dist.find(state);
    if (it == dist.end() || it->second != d) continue;
    auto [v, mask] = state;
    if (mask == full) return d;
    int level = level_of(mask);
    for (auto [u, w] : adj[v]) {
      std::uint32_t nmask = mask;
      int ti = term_index(u);
      if (ti >= 0) nmask |= 1u << ti;
      Rat nd = d + w * (m - level);
      auto key = std::pair{u, nmask};
      auto jt = dist.find(key);
      if (jt == dist.end() || nd < jt->second) {
        dist[key] = nd;
        heap.push({nd, key});
      }
    }
  }
  return Rat(-1);  // unreachable
}

}  // namespace

TEST_CASE("walk_cost fixtures") {
  Instance one = unit_path(0);
  WalkCostResult res = walk_cost(one, {0, 1, 2});
  CHECK(res.prefix_lengths == std::vector<Rat>{Rat(1), Rat(2)});
  CHECK(res.cost == Rat(3));

  Instance two = unit_path(1);
  WalkCostResult res2 = walk_cost(two, {0, 1, 2});
  CHECK(res2.prefix_lengths == std::vector<Rat>{Rat(2)});
  CHECK(res2.cost == Rat(2));

  Instance empty = unit_path(0);
  empty.colors.clear();
  CHECK(walk_cost(empty, {0}).cost == Rat(0));

  CHECK_THROWS(walk_cost(one, {1, 2}));     // not starting at the root
  CHECK_THROWS(walk_cost(one, {0, 1}));     // never covers level m
  CHECK_THROWS(walk_cost(one, {0, 2, 1}));  // r and b are not adjacent

  Instance frac = one;
  frac.edges[0].weight = Rat(1, 2);
  CHECK_THROWS(walk_cost(frac, {0, 1, 2}));
}

TEST_CASE("walk_cost is monotone under prefix extension") {
  Instance inst = gen_random(6, 2, 2, 5, 3);
  LatencyWalk walk = latency_solve_greedy(inst);
  WalkCostResult base = walk_cost(inst, walk.vertices);
  // Extending the walk does not change any attained prefix length.
  std::vector<int> extended = walk.vertices;
  ShortestPaths apsp(inst);
  int last = extended.back();
  for (int v = 0; v < inst.node_count; ++v)
    if (v != last && apsp.dist(last, v) > 0) {
      const SsspTree& t = apsp.from(last);
      std::vector<int> hops;
      for (int u = v; u != last; u = t.parent_node[u]) hops.push_back(u);
      for (auto hop = hops.rbegin(); hop != hops.rend(); ++hop) extended.push_back(*hop);
      break;
    }
  WalkCostResult ext = walk_cost(inst, extended);
  CHECK(ext.prefix_lengths == base.prefix_lengths);
  CHECK(ext.cost == base.cost);
}

TEST_CASE("eulerify fixtures and length law") {
  Instance star;
  star.node_count = 3;
  star.root = 0;
  star.edges = {Edge{0, 1, Rat(1)}, Edge{0, 2, Rat(1)}};
  star.colors = {{1, 2}};
  CoverTree both{{0, 1}, 2, Rat(2)};
  std::vector<int> walk = eulerify(star, both);
  CHECK(walk == std::vector<int>{0, 1, 0, 2, 0});

  CoverTree single{{0}, 1, Rat(1)};
  CHECK(eulerify(star, single) == std::vector<int>{0, 1, 0});

  CoverTree rootless{{}, 0, Rat(0)};
  CHECK(eulerify(star, rootless) == std::vector<int>{0});

  Instance detached;
  detached.node_count = 4;
  detached.root = 0;
  detached.edges = {Edge{0, 1, Rat(1)}, Edge{2, 3, Rat(1)}};
  detached.colors = {{1}};
  CHECK_THROWS(eulerify(detached, CoverTree{{1}, 0, Rat(1)}));
}

TEST_CASE("eulerify walks are twice the weight on random trees") {
  int done = 0;
  for (std::uint64_t seed = 0; seed < 120 && done < 100; ++seed) {
    Instance inst = gen_random(4 + seed % 6, 2, 1 + seed % 3, seed, 4);
    CoverTree tree = greedy_cover_tree(inst, 1 + static_cast<int>(seed % 2));
    if (tree.edges.empty()) continue;
    std::vector<int> walk = eulerify(inst, tree);
    Rat length(0);
    std::map<std::pair<int, int>, Rat> cheapest;
    for (const Edge& e : inst.edges) {
      std::pair<int, int> key{std::min(e.u, e.v), std::max(e.u, e.v)};
      auto it = cheapest.find(key);
      if (it == cheapest.end() || e.weight < it->second) cheapest[key] = e.weight;
    }
    for (size_t i = 1; i < walk.size(); ++i)
      length += cheapest.at({std::min(walk[i - 1], walk[i]), std::max(walk[i - 1], walk[i])});
    CHECK(length <= tree.weight * 2);
    // Every tree vertex appears.
    std::set<int> walk_nodes(walk.begin(), walk.end());
    for (int e : tree.edges) {
      CHECK(walk_nodes.count(inst.edges[e].u));
      CHECK(walk_nodes.count(inst.edges[e].v));
    }
    ++done;
  }
  CHECK(done == 100);
}

TEST_CASE("greedy_cover_tree fixtures") {
  Instance two = unit_path(1);
  CoverTree t1 = greedy_cover_tree(two, 1);
  CHECK(t1.weight == Rat(2));
  CHECK(t1.edges == std::vector<int>{0, 1});

  CHECK(greedy_cover_tree(two, 0).weight == Rat(0));

  Instance lonely = unit_path(1);
  lonely.edges.pop_back();  // b unreachable
  CHECK_THROWS(greedy_cover_tree(lonely, 1));
}

TEST_CASE("greedy_cover_tree vs exact minimum cover tree (ratio recorded)") {
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Instance inst = gen_random(4 + seed % 4, 2, 2, seed, 4);
    int target = 1 + static_cast<int>(seed % 2);
    CoverTree greedy = greedy_cover_tree(inst, target);

    // Exact minimum by subset enumeration over edges.
    Rat best(-1);
    for (std::uint64_t mask = 0; mask < (1ull << inst.edge_count()); ++mask) {
      std::vector<int> parent(inst.node_count);
      for (int v = 0; v < inst.node_count; ++v) parent[v] = v;
      auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
      };
      Rat weight(0);
      for (int e = 0; e < inst.edge_count(); ++e)
        if (mask & (1ull << e)) {
          parent[find(inst.edges[e].u)] = find(inst.edges[e].v);
          weight += inst.edges[e].weight;
        }
      bool covers = true;
      for (const auto& color : inst.colors) {
        int covered = 0;
        for (int t : color)
          if (find(t) == find(inst.root)) ++covered;
        if (covered < std::min<int>(target, color.size())) covers = false;
      }
      if (covers && (best < 0 || weight < best)) best = weight;
    }
    REQUIRE(best >= 0);
    CHECK(greedy.weight >= best);
    if (best > 0) worst = std::max(worst, rat_to_double(Rat(greedy.weight / best)));
  }
  MESSAGE("worst greedy/exact cover-tree ratio: " << worst);
}

TEST_CASE("latency_round fixtures") {
  Instance one = unit_path(0);
  CoverTree full = greedy_cover_tree(one, 2);
  std::map<std::int64_t, CoverTree> single{{4, full}};
  LatencyWalk walk = latency_round(one, single, 0);
  CHECK(walk.cost == walk_cost(one, walk.vertices).cost);

  std::map<std::int64_t, CoverTree> ladder{{1, greedy_cover_tree(one, 1)}, {2, full}};
  LatencyWalk two_scale = latency_round(one, ladder, 0);
  CHECK(two_scale.vertices == std::vector<int>{0, 1, 0, 1, 2, 1, 0});
  CHECK(two_scale.cost >= latency_exact(one).cost);

  // Tree heavier than its scale is rejected.
  std::map<std::int64_t, CoverTree> heavy{{1, full}};
  CHECK_THROWS(latency_round(one, heavy, 0));
  // Final tree must cover level m.
  std::map<std::int64_t, CoverTree> shallow{{1, greedy_cover_tree(one, 1)}};
  CHECK_THROWS(latency_round(one, shallow, 0));
}

TEST_CASE("latency_exact fixtures and walk-enumeration oracle") {
  Instance one = unit_path(0);
  LatencyWalk best = latency_exact(one);
  CHECK(best.cost == Rat(3));
  CHECK(best.prefix_lengths == std::vector<Rat>{Rat(1), Rat(2)});

  Instance star;
  star.node_count = 3;
  star.root = 0;
  star.edges = {Edge{0, 1, Rat(4)}, Edge{0, 2, Rat(1)}};
  star.colors = {{1}};
  CHECK(latency_exact(star).cost == Rat(4));

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Instance inst = gen_random(3 + seed % 3, 1 + seed % 2, 1 + seed % 2, seed, 3);
    LatencyWalk walk = latency_exact(inst);
    CHECK(walk.cost == state_dijkstra_cost(inst));
    CHECK(walk_cost(inst, walk.vertices).cost == walk.cost);
  }
}

TEST_CASE("latency_solve_greedy stays within the regression guard") {
  Instance single;
  single.node_count = 2;
  single.root = 0;
  single.edges = {Edge{0, 1, Rat(7)}};
  single.colors = {{1}};
  LatencyWalk walk = latency_solve_greedy(single);
  CHECK(walk.prefix_lengths == std::vector<Rat>{Rat(7)});
  CHECK(walk.cost <= Rat(14));

  double worst = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Instance inst = random_instance(seed, 3 + seed % 5, 1 + seed % 3, 1 + seed % 3, 4);
    LatencyWalk greedy = latency_solve_greedy(inst);
    LatencyWalk exact = latency_exact(inst);
    CHECK(greedy.cost >= exact.cost);
    if (exact.cost > 0) {
      double ratio = rat_to_double(Rat(greedy.cost / exact.cost));
      CHECK(ratio <= 16.0);
      worst = std::max(worst, ratio);
    }
  }
  MESSAGE("worst greedy/exact latency ratio: " << worst);
}
