#include "sandkit/flow.hpp"
#include "sandkit/generators.hpp"
#include "sandkit/rng.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <set>

using namespace sandkit;
using namespace sandkit::testutil;

TEST_CASE("max_flow unit path and bottleneck") {
  ArcGraph g;
  g.node_count = 2;  // 0 = root, 1 = terminal
  g.arcs = {{1, 0, Rat(1)}, {0, 1, Rat(1)}};
  MaxFlowResult res = max_flow(g, {{1, Rat(1)}}, 0);
  CHECK(res.value == 1.0);
  CHECK(res.min_cut.empty());

  ArcGraph shared;
  shared.node_count = 4;  // a=1, b=2 feed middle 3, arc 3->0 capacity 1
  shared.arcs = {{1, 3, Rat(5)}, {2, 3, Rat(5)}, {3, 0, Rat(1)}};
  MaxFlowResult res2 = max_flow(shared, {{1, Rat(1)}, {2, Rat(1)}}, 0);
  CHECK(res2.value == 1.0);
}

TEST_CASE("max_flow agrees with brute-force min cut on random graphs") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Instance inst = gen_random(3 + seed % 6, 1, 1, seed, 7);
    DetRng rng(seed * 31 + 7);
    ArcGraph g;
    g.node_count = inst.node_count;
    for (const Edge& e : inst.edges) {
      // Random rational arc capacities in both directions.
      g.arcs.push_back({e.u, e.v, Rat(rng.uniform(0, 6), 1 + rng.uniform(0, 2))});
      g.arcs.push_back({e.v, e.u, Rat(rng.uniform(0, 6), 1 + rng.uniform(0, 2))});
    }
    std::vector<std::pair<int, Rat>> supplies;
    for (int v = 1; v < inst.node_count; ++v)
      if (rng.uniform(0, 1)) supplies.emplace_back(v, Rat(1 + rng.uniform(0, 2)));
    if (supplies.empty()) supplies.emplace_back(inst.node_count - 1, Rat(1));

    MaxFlowResult fast = max_flow(g, supplies, 0);
    Rat brute = brute_max_flow(g, supplies, 0);
    CHECK(fast.value == doctest::Approx(rat_to_double(brute)).epsilon(1e-9));
  }
}

TEST_CASE("check_feasible on I2") {
  Instance inst = make_i2();
  CHECK(check_feasible(inst, ones(inst)).feasible);

  CapacityPlan broken = ones(inst);
  broken.values[2] = Rat(0);  // cut terminal b loose
  FeasibilityResult res = check_feasible(inst, broken);
  REQUIRE_FALSE(res.feasible);
  CHECK(res.violation.node_set == std::vector<int>{3});
  CHECK(res.violation.rhs == 1);
  CHECK(res.violation.witness_color == 1);
}

TEST_CASE("check_feasible accepts the fractional kneser plans") {
  for (int s : {2, 3}) {
    KneserResult kn = gen_kneser(s);
    CHECK(check_feasible(kn.inst, kn.plan).feasible);
  }
}

TEST_CASE("check_feasible matches exhaustive cut enumeration") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Instance inst = random_instance(seed, 3 + seed % 6, 1 + seed % 3, 1 + seed % 3, 5);
    DetRng rng(seed + 999);
    CapacityPlan plan = CapacityPlan::zeros(inst.edge_count());
    for (Rat& v : plan.values) v = Rat(rng.uniform(0, 2));
    bool feasible = check_feasible(inst, plan).feasible;
    CHECK(feasible == !exists_violated_cut(inst, plan, 0.0));
    ++checked;
  }
  CHECK(checked >= 50);
}

TEST_CASE("extract_routing on I2 and a one-color star") {
  Instance inst = make_i2();
  Routing routing = extract_routing(inst, ones(inst));
  REQUIRE(routing.walks.size() == 2);
  // green: g -> v -> r over edges 1 then 0
  const auto& g_walk = routing.walks[0].at(2);
  REQUIRE(g_walk.size() == 2);
  CHECK(g_walk[0].edge == 1);
  CHECK(g_walk[1].edge == 0);
  const auto& b_walk = routing.walks[1].at(3);
  REQUIRE(b_walk.size() == 2);
  CHECK(b_walk[0].edge == 2);
  CHECK(b_walk[1].edge == 0);
  validate_routing(inst, ones(inst), routing);

  Instance star;
  star.node_count = 3;
  star.root = 0;
  star.edges = {Edge{0, 1, Rat(1)}, Edge{0, 2, Rat(1)}};
  star.colors = {{1, 2}};
  Routing sr = extract_routing(star, ones(star));
  CHECK(sr.walks[0].at(1).size() == 1);
  CHECK(sr.walks[0].at(2).size() == 1);

  CapacityPlan infeasible = CapacityPlan::zeros(inst.edge_count());
  CHECK_THROWS(extract_routing(inst, infeasible));
}

TEST_CASE("extract_routing satisfies the routing invariants on random instances") {
  int done = 0;
  for (std::uint64_t seed = 0; seed < 130 && done < 100; ++seed) {
    Instance inst = gen_random(4 + seed % 5, 1 + seed % 2, 1 + seed % 3, seed, 6);
    if (inst.max_color_size() > inst.node_count - 1) continue;
    CapacityPlan plan = shortest_path_solve(inst);
    REQUIRE(check_feasible(inst, plan).feasible);
    Routing routing = extract_routing(inst, plan);
    validate_routing(inst, plan, routing);  // throws on any violation
    // Walks are cycle-free: no repeated vertex within one walk.
    for (int c = 0; c < inst.color_count(); ++c)
      for (const auto& [t, walk] : routing.walks[c]) {
        std::set<int> seen{t};
        int at = t;
        for (const WalkStep& step : walk) {
          const Edge& e = inst.edges[step.edge];
          at = step.forward ? e.v : e.u;
          CHECK(seen.insert(at).second);
        }
        CHECK(at == inst.root);
      }
    ++done;
  }
  CHECK(done == 100);
}
