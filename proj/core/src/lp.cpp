#include "sandkit/lp.hpp"

#include "sandkit/approx.hpp"
#include "sandkit/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace sandkit {

namespace {

std::vector<int> delta_edges(const Instance& inst, const std::vector<int>& node_set) {
  std::vector<char> in_set(inst.node_count, 0);
  for (int v : node_set) in_set[v] = 1;
  std::vector<int> edges;
  for (int e = 0; e < inst.edge_count(); ++e)
    if (in_set[inst.edges[e].u] != in_set[inst.edges[e].v]) edges.push_back(e);
  return edges;
}

void require_terminals_connected(const Instance& inst) {
  SsspTree tree = dijkstra(inst, inst.root);
  for (const auto& color : inst.colors)
    for (int t : color)
      if (!tree.reached[t])
        throw std::invalid_argument("terminal " + std::to_string(t) +
                                    " is disconnected from the root");
}

struct CutPool {
  std::vector<CutConstraint> cuts;
  std::set<std::pair<std::vector<int>, int>> seen;

  bool add(const CutConstraint& cut) {
    if (!seen.emplace(cut.node_set, cut.rhs).second) return false;
    cuts.push_back(cut);
    return true;
  }
};

CutPool singleton_cuts(const Instance& inst) {
  CutPool pool;
  std::set<int> terminals;
  for (const auto& color : inst.colors) terminals.insert(color.begin(), color.end());
  for (int t : terminals) {
    CutConstraint cut;
    cut.node_set = {t};
    cut.rhs = 1;
    for (int i = 0; i < inst.color_count(); ++i)
      if (std::binary_search(inst.colors[i].begin(), inst.colors[i].end(), t)) {
        cut.witness_color = i;
        break;
      }
    pool.add(cut);
  }
  return pool;
}

LpProblem build_problem(const Instance& inst, const CutPool& pool, const std::vector<int>* lb,
                        const std::vector<int>* ub) {
  LpProblem p;
  p.num_vars = inst.edge_count();
  p.objective.resize(p.num_vars);
  for (int e = 0; e < p.num_vars; ++e) p.objective[e] = rat_to_double(inst.edges[e].weight);
  for (const CutConstraint& cut : pool.cuts) {
    LpProblem::Row row;
    for (int e : delta_edges(inst, cut.node_set)) row.coeffs.emplace_back(e, 1.0);
    row.rhs = cut.rhs;
    p.rows.push_back(std::move(row));
  }
  if (lb)
    for (int e = 0; e < p.num_vars; ++e)
      if ((*lb)[e] > 0) p.rows.push_back({{{e, 1.0}}, static_cast<double>((*lb)[e])});
  if (ub)
    for (int e = 0; e < p.num_vars; ++e)
      p.rows.push_back({{{e, -1.0}}, -static_cast<double>((*ub)[e])});
  return p;
}

CapacityPlan snap_plan(const std::vector<double>& x) {
  CapacityPlan plan;
  plan.mode = PlanMode::fractional;
  plan.values.reserve(x.size());
  for (double v : x) plan.values.push_back(v <= 1e-12 ? Rat(0) : rat_from_double(v));
  return plan;
}

}  // namespace

std::vector<CutConstraint> separate(const Instance& inst, const CapacityPlan& x) {
  validate_plan(inst, x);
  ArcGraph g;
  g.node_count = inst.node_count;
  for (int e = 0; e < inst.edge_count(); ++e) {
    if (x.values[e] == 0) continue;
    g.arcs.push_back({inst.edges[e].u, inst.edges[e].v, x.values[e]});
    g.arcs.push_back({inst.edges[e].v, inst.edges[e].u, x.values[e]});
  }
  std::vector<CutConstraint> result;
  for (int i = 0; i < inst.color_count(); ++i) {
    std::vector<std::pair<int, Rat>> supplies;
    for (int t : inst.colors[i]) supplies.emplace_back(t, Rat(1));
    MaxFlowResult mf = max_flow(g, supplies, inst.root);
    double need = static_cast<double>(inst.colors[i].size());
    if (mf.value < need - 1e-7) {
      CutConstraint cut;
      cut.node_set = mf.min_cut;
      cut.witness_color = i;
      for (int t : inst.colors[i])
        if (std::binary_search(mf.min_cut.begin(), mf.min_cut.end(), t)) ++cut.rhs;
      result.push_back(std::move(cut));
    }
  }
  return result;
}

LpSolveResult solve_lp(const Instance& inst) {
  validate_instance(inst);
  require_terminals_connected(inst);

  CutPool pool = singleton_cuts(inst);
  LpSolveResult out;
  for (int round = 0; round < 10000; ++round) {
    LpProblem p = build_problem(inst, pool, nullptr, nullptr);
    LpSolution sol = simplex_solve(p);
    if (sol.status != LpStatus::optimal)
      throw std::runtime_error("LP solve failed unexpectedly");
    CapacityPlan plan = snap_plan(sol.x);
    auto cuts = separate(inst, plan);
    ++out.iterations;
    if (cuts.empty()) {
      out.plan = std::move(plan);
      out.optimum = plan_cost(inst, out.plan);
      out.cuts = static_cast<int>(pool.cuts.size());
      return out;
    }
    bool grew = false;
    for (const auto& cut : cuts) grew |= pool.add(cut);
    if (!grew) {
      // All violated cuts already pooled: the snapped plan sits just outside
      // the simplex tolerance. Tighten by keeping the raw vertex instead.
      CapacityPlan raw;
      raw.mode = PlanMode::fractional;
      for (double v : sol.x)
        raw.values.push_back(v <= 1e-12 ? Rat(0) : rat_exact_from_double(v));
      if (separate(inst, raw).empty()) {
        out.plan = std::move(raw);
        out.optimum = plan_cost(inst, out.plan);
        out.cuts = static_cast<int>(pool.cuts.size());
        return out;
      }
      throw std::runtime_error("cutting-plane loop stalled");
    }
  }
  throw std::runtime_error("cutting-plane loop did not converge");
}

namespace {

struct BranchNode {
  std::vector<int> lb, ub;
  double bound = 0.0;  // parent LP value
};

}  // namespace

ExactSolveResult solve_exact(const Instance& inst, std::int64_t node_budget) {
  validate_instance(inst);
  require_terminals_connected(inst);

  ExactSolveResult out;
  CapacityPlan incumbent = shortest_path_solve(inst);
  Rat incumbent_cost = plan_cost(inst, incumbent);

  const int cap = std::max(1, inst.max_color_size());
  CutPool pool = singleton_cuts(inst);

  std::vector<BranchNode> open;
  open.push_back(BranchNode{std::vector<int>(inst.edge_count(), 0),
                            std::vector<int>(inst.edge_count(), cap), 0.0});

  double global_lb_when_exhausted = 0.0;
  bool exhausted = false;

  while (!open.empty()) {
    if (out.nodes >= node_budget) {
      exhausted = true;
      break;
    }
    // Depth-first, with a best-bound restart every 10,000 nodes.
    size_t pick = open.size() - 1;
    if (out.nodes > 0 && out.nodes % 10000 == 0) {
      for (size_t i = 0; i < open.size(); ++i)
        if (open[i].bound < open[pick].bound) pick = i;
    }
    BranchNode node = std::move(open[pick]);
    open.erase(open.begin() + pick);
    ++out.nodes;

    double inc_val = rat_to_double(incumbent_cost);
    const double prune_eps = 1e-7 * (1.0 + std::fabs(inc_val));
    if (node.bound >= inc_val - prune_eps) continue;

    bool pruned = false;
    LpSolution sol;
    while (true) {
      LpProblem p = build_problem(inst, pool, &node.lb, &node.ub);
      sol = simplex_solve(p);
      if (sol.status == LpStatus::infeasible) {
        pruned = true;
        break;
      }
      if (sol.status != LpStatus::optimal)
        throw std::runtime_error("node LP solve failed unexpectedly");
      if (sol.objective >= inc_val - prune_eps) {
        pruned = true;
        break;
      }
      auto cuts = separate(inst, snap_plan(sol.x));
      if (cuts.empty()) break;
      bool grew = false;
      for (const auto& cut : cuts) grew |= pool.add(cut);
      if (!grew) break;  // x feasible within tolerance under the pool
    }
    if (pruned) continue;

    // Integral within tolerance? Verify exactly and update the incumbent.
    int branch_edge = -1;
    double branch_frac = 0.0, branch_value = 0.0;
    for (int e = 0; e < inst.edge_count(); ++e) {
      double frac = std::fabs(sol.x[e] - std::round(sol.x[e]));
      if (frac > 1e-6 && frac > branch_frac + 1e-12) {
        branch_frac = frac;
        branch_edge = e;
        branch_value = sol.x[e];
      }
    }
    if (branch_edge < 0) {
      CapacityPlan candidate = CapacityPlan::zeros(inst.edge_count());
      for (int e = 0; e < inst.edge_count(); ++e)
        candidate.values[e] = Rat(static_cast<long long>(std::llround(sol.x[e])));
      FeasibilityResult feas = check_feasible(inst, candidate);
      if (feas.feasible) {
        Rat cost = plan_cost(inst, candidate);
        if (cost < incumbent_cost) {
          incumbent = std::move(candidate);
          incumbent_cost = cost;
        }
      } else if (pool.add(feas.violation)) {
        node.bound = sol.objective;
        open.push_back(std::move(node));  // revisit under the new cut
      }
      continue;
    }

    BranchNode down = node, up = std::move(node);
    down.ub[branch_edge] = static_cast<int>(std::floor(branch_value));
    up.lb[branch_edge] = static_cast<int>(std::ceil(branch_value));
    down.bound = up.bound = sol.objective;
    open.push_back(std::move(down));
    open.push_back(std::move(up));  // ceil child explored first
  }

  if (exhausted) {
    global_lb_when_exhausted = rat_to_double(incumbent_cost);
    for (const auto& node : open)
      global_lb_when_exhausted = std::min(global_lb_when_exhausted, node.bound);
  }

  out.plan = std::move(incumbent);
  out.optimum = incumbent_cost;
  out.optimal = !exhausted;
  out.lower_bound = exhausted ? global_lb_when_exhausted : rat_to_double(incumbent_cost);
  out.cuts = static_cast<int>(pool.cuts.size());
  return out;
}

}  // namespace sandkit
