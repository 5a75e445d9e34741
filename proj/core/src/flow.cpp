#include "sandkit/flow.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>

namespace sandkit {

namespace {

template <class Cap>
struct Dinic {
  struct InternalArc {
    int to;
    int rev;
    Cap cap;
  };
  std::vector<std::vector<InternalArc>> adj;
  std::vector<int> level, ptr;
  Cap eps;

  explicit Dinic(int n, Cap eps_) : adj(n), level(n), ptr(n), eps(eps_) {}

  // Returns a handle (node, slot) for reading the residual capacity later.
  std::pair<int, int> add_arc(int from, int to, Cap cap) {
    std::pair<int, int> handle{from, static_cast<int>(adj[from].size())};
    adj[from].push_back({to, static_cast<int>(adj[to].size()), cap});
    adj[to].push_back({from, static_cast<int>(adj[from].size()) - 1, Cap(0)});
    return handle;
  }

  Cap residual(std::pair<int, int> handle) const { return adj[handle.first][handle.second].cap; }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const auto& a : adj[v])
        if (a.cap > eps && level[a.to] < 0) {
          level[a.to] = level[v] + 1;
          q.push(a.to);
        }
    }
    return level[t] >= 0;
  }

  Cap dfs(int v, int t, Cap pushed) {
    if (v == t) return pushed;
    for (int& i = ptr[v]; i < static_cast<int>(adj[v].size()); ++i) {
      auto& a = adj[v][i];
      if (a.cap <= eps || level[a.to] != level[v] + 1) continue;
      Cap got = dfs(a.to, t, std::min(pushed, a.cap));
      if (got > eps) {
        a.cap -= got;
        adj[a.to][a.rev].cap += got;
        return got;
      }
    }
    return Cap(0);
  }

  Cap run(int s, int t) {
    Cap flow(0);
    const Cap inf = std::numeric_limits<Cap>::max();
    while (bfs(s, t)) {
      std::fill(ptr.begin(), ptr.end(), 0);
      while (true) {
        Cap got = dfs(s, t, inf);
        if (got <= eps) break;
        flow += got;
      }
    }
    return flow;
  }

  std::vector<int> residual_side(int s) const {
    std::vector<char> seen(adj.size(), 0);
    std::queue<int> q;
    seen[s] = 1;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const auto& a : adj[v])
        if (a.cap > eps && !seen[a.to]) {
          seen[a.to] = 1;
          q.push(a.to);
        }
    }
    std::vector<int> side;
    for (size_t v = 0; v < adj.size(); ++v)
      if (seen[v]) side.push_back(static_cast<int>(v));
    return side;
  }
};

// Least common multiple of all capacity denominators, or 0 when scaling to
// 64-bit integers would overflow.
BigInt scaling_factor(const ArcGraph& graph, const std::vector<std::pair<int, Rat>>& supplies) {
  const BigInt limit("1000000000000");
  BigInt l = 1;
  BigInt total = 0;
  auto fold = [&](const Rat& v) {
    l = boost::multiprecision::lcm(l, denominator(v));
    total += numerator(v) >= 0 ? numerator(v) : BigInt(-numerator(v));
    return l <= limit && total <= limit;
  };
  for (const auto& arc : graph.arcs)
    if (!fold(arc.cap)) return 0;
  for (const auto& [node, supply] : supplies)
    if (!fold(supply)) return 0;
  return l;
}

std::int64_t scaled(const Rat& v, const BigInt& scale) {
  return static_cast<std::int64_t>(Rat(v * scale).convert_to<BigInt>());
}

}  // namespace

MaxFlowResult max_flow(const ArcGraph& graph, const std::vector<std::pair<int, Rat>>& supplies,
                       int sink) {
  const int n = graph.node_count;
  const int super = n;
  MaxFlowResult result;

  BigInt scale = scaling_factor(graph, supplies);
  if (scale > 0) {
    Dinic<std::int64_t> net(n + 1, 0);
    for (const auto& arc : graph.arcs)
      if (arc.cap > 0) net.add_arc(arc.from, arc.to, scaled(arc.cap, scale));
    for (const auto& [node, supply] : supplies)
      if (supply > 0) net.add_arc(super, node, scaled(supply, scale));
    std::int64_t flow = net.run(super, sink);
    result.value = Rat(Rat(flow) / Rat(scale)).convert_to<double>();
    result.exact = true;
    for (int v : net.residual_side(super))
      if (v != super) result.min_cut.push_back(v);
  } else {
    Dinic<double> net(n + 1, 1e-12);
    for (const auto& arc : graph.arcs)
      if (arc.cap > 0) net.add_arc(arc.from, arc.to, rat_to_double(arc.cap));
    for (const auto& [node, supply] : supplies)
      if (supply > 0) net.add_arc(super, node, rat_to_double(supply));
    result.value = net.run(super, sink);
    result.exact = false;
    for (int v : net.residual_side(super))
      if (v != super) result.min_cut.push_back(v);
  }
  std::sort(result.min_cut.begin(), result.min_cut.end());
  return result;
}

namespace {

ArcGraph undirected_capacity_graph(const Instance& inst, const CapacityPlan& plan) {
  ArcGraph g;
  g.node_count = inst.node_count;
  for (int e = 0; e < inst.edge_count(); ++e) {
    if (plan.values[e] == 0) continue;
    g.arcs.push_back({inst.edges[e].u, inst.edges[e].v, plan.values[e]});
    g.arcs.push_back({inst.edges[e].v, inst.edges[e].u, plan.values[e]});
  }
  return g;
}

}  // namespace

FeasibilityResult check_feasible(const Instance& inst, const CapacityPlan& plan) {
  validate_plan(inst, plan);
  ArcGraph g = undirected_capacity_graph(inst, plan);
  const double tol = plan.mode == PlanMode::integral ? 0.5 : 1e-7;
  for (int i = 0; i < inst.color_count(); ++i) {
    std::vector<std::pair<int, Rat>> supplies;
    for (int t : inst.colors[i]) supplies.emplace_back(t, Rat(1));
    MaxFlowResult mf = max_flow(g, supplies, inst.root);
    double need = static_cast<double>(inst.colors[i].size());
    if (mf.value < need - tol) {
      FeasibilityResult res;
      res.feasible = false;
      res.violation.node_set = mf.min_cut;
      res.violation.witness_color = i;
      int rhs = 0;
      for (int t : inst.colors[i])
        if (std::binary_search(mf.min_cut.begin(), mf.min_cut.end(), t)) ++rhs;
      res.violation.rhs = rhs;
      return res;
    }
  }
  return FeasibilityResult{};
}

namespace {

// Strips one unit-flow walk from terminal to root. Any directed cycle the
// walk stumbles into is excised permanently: a circulation can be dropped
// without unbalancing the rest of the decomposition.
std::vector<WalkStep> strip_walk(const Instance& inst,
                                 std::vector<std::vector<std::pair<int, std::int64_t>>>& out_flow,
                                 int terminal, int root) {
  std::vector<WalkStep> walk;
  std::vector<int> nodes{terminal};
  int v = terminal;
  while (v != root) {
    int chosen = -1;
    for (auto& [e, f] : out_flow[v])
      if (f > 0) {
        chosen = e;
        break;
      }
    if (chosen == -1) throw std::logic_error("flow decomposition ran out of arcs");
    for (auto& [e, f] : out_flow[v])
      if (e == chosen) {
        --f;
        break;
      }
    const Edge& edge = inst.edges[chosen];
    bool forward = edge.u == v;
    int next = forward ? edge.v : edge.u;
    auto seen = std::find(nodes.begin(), nodes.end(), next);
    if (seen != nodes.end()) {
      size_t keep = seen - nodes.begin();
      walk.resize(keep);
      nodes.resize(keep + 1);
    } else {
      walk.push_back(WalkStep{chosen, forward});
      nodes.push_back(next);
    }
    v = next;
  }
  return walk;
}

}  // namespace

Routing extract_routing(const Instance& inst, const CapacityPlan& plan) {
  validate_plan(inst, plan);
  if (plan.mode != PlanMode::integral)
    throw std::invalid_argument("extract_routing requires an integral plan");
  FeasibilityResult feas = check_feasible(inst, plan);
  if (!feas.feasible) throw std::invalid_argument("extract_routing on infeasible plan");

  Routing routing;
  routing.walks.resize(inst.color_count());
  for (int i = 0; i < inst.color_count(); ++i) {
    const auto demand = static_cast<std::int64_t>(inst.colors[i].size());

    Dinic<std::int64_t> net(inst.node_count + 1, 0);
    std::vector<std::pair<int, int>> fwd_handle(inst.edge_count(), {-1, -1});
    std::vector<std::pair<int, int>> bwd_handle(inst.edge_count(), {-1, -1});
    std::vector<std::int64_t> cap_used(inst.edge_count(), 0);
    for (int e = 0; e < inst.edge_count(); ++e) {
      if (plan.values[e] == 0) continue;
      // No color ever pushes more than its demand through one edge.
      Rat clamped = std::min(plan.values[e], Rat(demand));
      cap_used[e] = static_cast<std::int64_t>(Rat(clamped).convert_to<BigInt>());
      fwd_handle[e] = net.add_arc(inst.edges[e].u, inst.edges[e].v, cap_used[e]);
      bwd_handle[e] = net.add_arc(inst.edges[e].v, inst.edges[e].u, cap_used[e]);
    }
    for (int t : inst.colors[i]) net.add_arc(inst.node_count, t, 1);
    std::int64_t flow = net.run(inst.node_count, inst.root);
    if (flow != demand)
      throw std::logic_error("flow value changed between feasibility check and decomposition");

    std::vector<std::vector<std::pair<int, std::int64_t>>> out_flow(inst.node_count);
    for (int e = 0; e < inst.edge_count(); ++e) {
      if (plan.values[e] == 0) continue;
      std::int64_t sent_uv = cap_used[e] - net.residual(fwd_handle[e]);
      std::int64_t sent_vu = cap_used[e] - net.residual(bwd_handle[e]);
      std::int64_t net_flow = sent_uv - sent_vu;
      if (net_flow > 0)
        out_flow[inst.edges[e].u].emplace_back(e, net_flow);
      else if (net_flow < 0)
        out_flow[inst.edges[e].v].emplace_back(e, -net_flow);
    }
    for (auto& list : out_flow) std::sort(list.begin(), list.end());

    for (int t : inst.colors[i]) routing.walks[i][t] = strip_walk(inst, out_flow, t, inst.root);
  }
  return routing;
}

void validate_routing(const Instance& inst, const CapacityPlan& plan, const Routing& routing) {
  validate_plan(inst, plan);
  if (static_cast<int>(routing.walks.size()) != inst.color_count())
    throw std::invalid_argument("routing color count mismatch");
  for (int i = 0; i < inst.color_count(); ++i) {
    std::vector<std::int64_t> used(inst.edge_count(), 0);
    for (int t : inst.colors[i]) {
      auto it = routing.walks[i].find(t);
      if (it == routing.walks[i].end())
        throw std::invalid_argument("terminal " + std::to_string(t) + " has no walk in color " +
                                    std::to_string(i));
      int at = t;
      for (const WalkStep& step : it->second) {
        if (step.edge < 0 || step.edge >= inst.edge_count())
          throw std::invalid_argument("walk references unknown edge");
        const Edge& e = inst.edges[step.edge];
        int from = step.forward ? e.u : e.v;
        int to = step.forward ? e.v : e.u;
        if (from != at) throw std::invalid_argument("walk steps are not contiguous");
        at = to;
        ++used[step.edge];
      }
      if (at != inst.root) throw std::invalid_argument("walk does not end at the root");
    }
    for (int e = 0; e < inst.edge_count(); ++e)
      if (Rat(used[e]) > plan.values[e])
        throw std::invalid_argument("color " + std::to_string(i) + " overuses edge " +
                                    std::to_string(e));
  }
}

}  // namespace sandkit
