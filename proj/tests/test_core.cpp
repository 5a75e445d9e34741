#include "sandkit/generators.hpp"
#include "sandkit/instance.hpp"
#include "sandkit/lp.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace sandkit;
using namespace sandkit::testutil;

TEST_CASE("rational parse and canonical form") {
  CHECK(parse_rational("3") == Rat(3));
  CHECK(parse_rational("1.25") == Rat(5, 4));
  CHECK(parse_rational("5/4") == Rat(5, 4));
  CHECK(parse_rational("0") == Rat(0));
  CHECK(rat_to_string(Rat(5, 4)) == "5/4");
  CHECK(rat_to_string(Rat(12)) == "12");
  CHECK(rat_to_display(Rat(164, 5)) == "32.8");
  CHECK(rat_to_display(Rat(1, 3)) == "1/3");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK(rat_from_double(0.5) == Rat(1, 2));
  CHECK(rat_from_double(1.0 / 3.0) == Rat(1, 3));
  CHECK(rat_exact_from_double(0.5) == Rat(1, 2));
}

TEST_CASE("parse_instance basics") {
  Instance inst = parse_instance("nodes 3\nroot 0\nedge 0 1 1\nedge 0 2 1\ncolor 0: 1 2\n");
  CHECK(inst.node_count == 3);
  CHECK(inst.root == 0);
  CHECK(inst.edge_count() == 2);
  CHECK(inst.color_count() == 1);
  CHECK(inst.colors[0] == std::vector<int>{1, 2});
}

TEST_CASE("parse_instance error cases name the line") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      parse_instance(text);
      FAIL("expected a parse error for: " << text);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error("nodes 2\nroot 0\ncolor 0: 0\n", "color contains root");
  expect_error("nodes 2\nroot 0\nroot 1\n", "duplicate root");
  expect_error("nodes 2\nroot 0\nedge 0 5 1\n", "out of range");
  expect_error("nodes 2\nroot 0\ncolor 0: 7\n", "unknown node");
  expect_error("nodes 2\nroot 0\nedge 0 1\n", "expected 'edge");
  expect_error("nodes 2\nroot 0\nedge 1 1 2\n", "self-loop");
  expect_error("nodes 2\nroot 0\ncolor 1: 1\n", "out of order");
  expect_error("nodes 2\nroot 0\nedge 0 1 -2\n", "negative");

  try {
    parse_instance("nodes 2\nroot 0\n# fine\ncolor 0: 0\n");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("serialize canonical form and round-trip") {
  Instance inst;
  inst.node_count = 2;
  inst.root = 0;
  inst.edges = {Edge{0, 1, Rat(1)}};
  inst.colors = {{1}};
  CHECK(serialize_instance(inst) == "nodes 2\nroot 0\nedge 0 1 1\ncolor 0: 1\n");

  Instance zero = inst;
  zero.edges[0].weight = Rat(0);
  CHECK(serialize_instance(zero).find("edge 0 1 0\n") != std::string::npos);
}

TEST_CASE("parse/serialize round-trip over generated instances") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Instance inst = random_instance(seed, 2 + seed % 9, 1 + seed % 3, 1 + seed % 2);
    Instance again = parse_instance(serialize_instance(inst));
    CHECK(again == inst);
    CHECK(serialize_instance(again) == serialize_instance(inst));
  }
  // Fractional weights survive the trip too.
  Instance frac = make_i2();
  frac.edges[0].weight = Rat(7, 3);
  frac.edges[1].weight = Rat(1, 2);
  CHECK(parse_instance(serialize_instance(frac)) == frac);
}

TEST_CASE("plan round-trip and validation") {
  Instance inst = make_i2();
  CapacityPlan plan = ones(inst);
  CapacityPlan again = parse_plan(serialize_plan(plan), inst.edge_count());
  CHECK(again == plan);

  CapacityPlan frac;
  frac.mode = PlanMode::fractional;
  frac.values = {Rat(1, 3), Rat(0), Rat(5, 2)};
  CHECK(parse_plan(serialize_plan(frac), 3) == frac);

  CHECK_THROWS(parse_plan("plan integral 2\ncap 0 1/2\n", 2));
  CHECK_THROWS(parse_plan("plan integral 2\ncap 5 1\n", 2));
  CHECK_THROWS(parse_plan("plan integral 2\ncap 0 1\n", 3));
}

TEST_CASE("plan_cost examples and linearity") {
  Instance inst = make_i2();
  CHECK(plan_cost(inst, CapacityPlan::zeros(3)) == Rat(0));
  CHECK(plan_cost(inst, ones(inst)) == Rat(12));
  CHECK_THROWS(plan_cost(inst, CapacityPlan::zeros(2)));

  // Linearity with exact rationals.
  CapacityPlan x{PlanMode::fractional, {Rat(1, 2), Rat(3), Rat(0)}};
  CapacityPlan y{PlanMode::fractional, {Rat(2), Rat(1, 3), Rat(5)}};
  Rat a(3, 2), b(7, 5);
  CapacityPlan combo{PlanMode::fractional, {}};
  for (int e = 0; e < 3; ++e) combo.values.push_back(a * x.values[e] + b * y.values[e]);
  CHECK(plan_cost(inst, combo) == a * plan_cost(inst, x) + b * plan_cost(inst, y));
}

TEST_CASE("kneser plan cost matches the closed form") {
  KneserResult kn3 = gen_kneser(3);
  Rat cost = plan_cost(kn3.inst, kn3.plan);
  CHECK(cost == Rat(164, 5));
  CHECK(rat_to_double(cost) == doctest::Approx(32.8).epsilon(1e-9));
}

TEST_CASE("expand_parallel structure") {
  Instance inst;
  inst.node_count = 3;
  inst.root = 0;
  inst.edges = {Edge{0, 1, Rat(4)}};
  inst.colors = {{1}, {1, 2}, {1, 2}};
  inst.edges.push_back(Edge{1, 2, Rat(1)});
  ExpandedInstance ex = expand_parallel(inst);
  CHECK(ex.multiplicity == 2);
  CHECK(ex.inst.edge_count() == 4);
  CHECK(ex.source_edge == std::vector<int>{0, 0, 1, 1});
  CHECK(ex.inst.edges[0].weight == Rat(4));
  CHECK(ex.inst.edges[1].weight == Rat(4));

  Instance singletons = make_i2();
  singletons.colors = {{2}, {3}};
  ExpandedInstance ex1 = expand_parallel(singletons);
  CHECK(ex1.multiplicity == 1);
  CHECK(ex1.inst == singletons);
}

TEST_CASE("0/1 plans on the expansion aggregate to feasible plans") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Instance inst = gen_random(4 + seed % 4, 2, 2, seed, 5);
    ExpandedInstance ex = expand_parallel(inst);
    // Feasible 0/1 plan on the expansion: distribute the shortest-path
    // solve of the original over unit copies.
    CapacityPlan orig = shortest_path_solve(inst);
    CapacityPlan unit = CapacityPlan::zeros(ex.inst.edge_count());
    for (int e = 0; e < inst.edge_count(); ++e) {
      auto cap = orig.values[e].convert_to<std::int64_t>();
      REQUIRE(cap <= ex.multiplicity);
      for (int c = 0; c < cap; ++c) unit.values[e * ex.multiplicity + c] = Rat(1);
    }
    REQUIRE(check_feasible(ex.inst, unit).feasible);
    // Aggregate back: equal cost, feasible on the original.
    CapacityPlan agg = CapacityPlan::zeros(inst.edge_count());
    for (int ne = 0; ne < ex.inst.edge_count(); ++ne)
      agg.values[ex.source_edge[ne]] += unit.values[ne];
    CHECK(check_feasible(inst, agg).feasible);
    CHECK(plan_cost(inst, agg) == plan_cost(ex.inst, unit));
  }
}

TEST_CASE("pad_colors balances and preserves edge ids") {
  Instance inst = make_i2();
  inst.colors = {{2}, {1, 2, 3}};
  PaddedInstance padded = pad_colors(inst);
  CHECK(padded.dummy_nodes.size() == 2);
  CHECK(padded.inst.colors[0].size() == 3);
  CHECK(padded.inst.colors[1].size() == 3);
  CHECK(padded.original_edge_count == 3);
  for (size_t i = 0; i < padded.dummy_nodes.size(); ++i) {
    const Edge& e = padded.inst.edges[3 + i];
    CHECK(e.u == inst.root);
    CHECK(e.v == padded.dummy_nodes[i]);
    CHECK(e.weight == Rat(0));
  }

  Instance balanced = make_i2();
  CHECK(pad_colors(balanced).dummy_nodes.empty());

  Instance three = make_i2();
  three.colors.push_back({1});
  CHECK_THROWS(pad_colors(three));
}

TEST_CASE("pad_colors preserves the optimum") {
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    Instance inst = gen_random(4 + seed % 3, 2, 1 + seed % 2, seed, 6);
    PaddedInstance padded = pad_colors(inst);
    CHECK(solve_exact(inst).optimum == solve_exact(padded.inst).optimum);
  }
}

TEST_CASE("mst_cost examples") {
  Instance triangle;
  triangle.node_count = 3;
  triangle.root = 0;
  triangle.edges = {Edge{0, 1, Rat(1)}, Edge{1, 2, Rat(1)}, Edge{0, 2, Rat(1)}};
  CHECK(mst_cost(triangle) == Rat(2));

  CHECK(mst_cost(gen_kneser(2).inst) == Rat(11));
  CHECK(mst_cost(gen_kneser(3).inst) == Rat(36));

  Instance disconnected;
  disconnected.node_count = 3;
  disconnected.root = 0;
  disconnected.edges = {Edge{0, 1, Rat(1)}};
  CHECK_THROWS(mst_cost(disconnected));
}
