#pragma once

#include "sandkit/flow.hpp"
#include "sandkit/generators.hpp"
#include "sandkit/instance.hpp"
#include "sandkit/rng.hpp"

#include <set>
#include <string>
#include <vector>

namespace sandkit::testutil {

// gen_random with the color size clamped to the node budget.
inline Instance random_instance(std::uint64_t seed, int n, int k, int color_size,
                                int max_weight = 10) {
  return gen_random(n, k, std::min(color_size, n - 1), seed, max_weight);
}

// I2: root r--v (10), v--g (1), v--b (1), colors {g}, {b}.
inline Instance make_i2() {
  Instance inst;
  inst.node_count = 4;
  inst.root = 0;
  inst.edges = {Edge{0, 1, Rat(10)}, Edge{1, 2, Rat(1)}, Edge{1, 3, Rat(1)}};
  inst.colors = {{2}, {3}};
  return inst;
}

inline CapacityPlan ones(const Instance& inst) {
  CapacityPlan plan;
  plan.mode = PlanMode::integral;
  plan.values.assign(inst.edge_count(), Rat(1));
  return plan;
}

// Exhaustive violated-cut search over all S subseteq V \ {r}: returns true
// iff some cut has x(delta(S)) < max_i |C_i ∩ S| - tol. Independent of the
// max-flow path entirely.
inline bool exists_violated_cut(const Instance& inst, const CapacityPlan& plan, double tol) {
  const int n = inst.node_count;
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    if (mask & (1ull << inst.root)) continue;
    Rat crossing(0);
    for (int e = 0; e < inst.edge_count(); ++e) {
      bool u_in = mask & (1ull << inst.edges[e].u);
      bool v_in = mask & (1ull << inst.edges[e].v);
      if (u_in != v_in) crossing += plan.values[e];
    }
    int need = 0;
    for (const auto& color : inst.colors) {
      int cnt = 0;
      for (int t : color)
        if (mask & (1ull << t)) ++cnt;
      need = std::max(need, cnt);
    }
    if (rat_to_double(crossing) < need - tol) return true;
  }
  return false;
}

inline bool brute_force_satisfiable(const CnfFormula& f, std::vector<char>* witness = nullptr) {
  for (std::uint64_t bits = 0; bits < (1ull << f.variable_count); ++bits) {
    bool ok = true;
    for (const auto& clause : f.clauses) {
      bool any = false;
      for (const auto& lit : clause) {
        bool val = (bits >> lit.variable) & 1;
        any |= lit.positive ? val : !val;
      }
      if (!any) {
        ok = false;
        break;
      }
    }
    if (ok) {
      if (witness) {
        witness->assign(f.variable_count, 0);
        for (int i = 0; i < f.variable_count; ++i) (*witness)[i] = (bits >> i) & 1;
      }
      return true;
    }
  }
  return false;
}

// Random formula in the 3-occurrence shape: each variable lands in 3
// distinct clauses with 1 or 2 negative occurrences.
inline CnfFormula random_three_occurrence_formula(int p, std::uint64_t seed) {
  DetRng rng(seed);
  while (true) {
    int m = p + 1 + static_cast<int>(rng.uniform(0, p));
    CnfFormula f;
    f.variable_count = p;
    f.clauses.assign(m, {});
    for (int i = 0; i < p; ++i) {
      std::vector<int> clauses = rng.sample(0, m - 1, 3);
      int negatives = 1 + static_cast<int>(rng.uniform(0, 1));
      std::vector<int> polarity{0, 1, 1};
      if (negatives == 2) polarity = {0, 0, 1};
      rng.shuffle(polarity);
      for (int o = 0; o < 3; ++o)
        f.clauses[clauses[o]].push_back({i, polarity[o] == 1});
    }
    bool all_nonempty = true;
    for (const auto& clause : f.clauses) all_nonempty &= !clause.empty();
    if (all_nonempty) return f;
  }
}

// Brute-force max flow via cut enumeration (max-flow = min-cut): minimum
// over all S containing the super-source of supplies outside S plus arc
// capacity leaving S. Exact rational arithmetic.
inline Rat brute_max_flow(const ArcGraph& g, const std::vector<std::pair<int, Rat>>& supplies,
                          int sink) {
  const int n = g.node_count;
  Rat best(-1);
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    if (mask & (1ull << sink)) continue;
    Rat cut(0);
    for (const auto& [node, supply] : supplies)
      if (!(mask & (1ull << node))) cut += supply;
    for (const auto& arc : g.arcs) {
      bool from_in = mask & (1ull << arc.from);
      bool to_in = mask & (1ull << arc.to);
      if (from_in && !to_in) cut += arc.cap;
    }
    if (best < 0 || cut < best) best = cut;
  }
  return best;
}

}  // namespace sandkit::testutil
