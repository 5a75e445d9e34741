#include "sandkit/generators.hpp"

#include "sandkit/rng.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sandkit {

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula f;
  int declared_clauses = -1;
  std::string line;
  int line_no = 0;
  std::vector<CnfFormula::Literal> current;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (tok == "c" || tok[0] == 'c') continue;
    if (tok == "p") {
      std::string fmt;
      if (!(ss >> fmt >> f.variable_count >> declared_clauses) || fmt != "cnf")
        throw ParseError(line_no, "bad DIMACS header");
      continue;
    }
    // Clause literals, 0-terminated, possibly spanning lines.
    ss.clear();
    ss.str(line);
    int lit;
    while (ss >> lit) {
      if (lit == 0) {
        if (current.empty()) throw ParseError(line_no, "empty clause");
        f.clauses.push_back(current);
        current.clear();
      } else {
        int var = std::abs(lit) - 1;
        if (var >= f.variable_count) throw ParseError(line_no, "literal out of range");
        current.push_back({var, lit > 0});
      }
    }
  }
  if (!current.empty()) f.clauses.push_back(current);
  if (declared_clauses >= 0 && declared_clauses != f.clause_count())
    throw ParseError(line_no, "clause count does not match header");
  return f;
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream ss(text);
  return parse_dimacs(ss);
}

namespace {

// occurrence[i] = clauses containing variable i, with polarity.
std::vector<std::vector<std::pair<int, bool>>> occurrences(const CnfFormula& f) {
  std::vector<std::vector<std::pair<int, bool>>> occ(f.variable_count);
  for (int j = 0; j < f.clause_count(); ++j)
    for (const auto& lit : f.clauses[j]) occ[lit.variable].emplace_back(j, lit.positive);
  return occ;
}

}  // namespace

NormalizeResult normalize_formula(const CnfFormula& raw) {
  auto occ = occurrences(raw);
  NormalizeResult out;
  out.formula = raw;
  out.flipped.assign(raw.variable_count, 0);
  for (int i = 0; i < raw.variable_count; ++i) {
    if (occ[i].size() != 3)
      throw std::invalid_argument("variable " + std::to_string(i + 1) +
                                  " occurs " + std::to_string(occ[i].size()) +
                                  " times (exactly 3 required)");
    std::set<int> distinct;
    int negatives = 0;
    for (auto [clause, positive] : occ[i]) {
      distinct.insert(clause);
      if (!positive) ++negatives;
    }
    if (distinct.size() != 3)
      throw std::invalid_argument("variable " + std::to_string(i + 1) +
                                  " occurs twice in one clause");
    if (negatives == 2) {
      out.flipped[i] = 1;
    } else if (negatives != 1) {
      throw std::invalid_argument("variable " + std::to_string(i + 1) + " has " +
                                  std::to_string(negatives) +
                                  " negated occurrences; flipping cannot reach exactly one");
    }
  }
  for (auto& clause : out.formula.clauses)
    for (auto& lit : clause)
      if (out.flipped[lit.variable]) lit.positive = !lit.positive;
  return out;
}

std::pair<Instance, ReductionMap> gen_sat(const CnfFormula& formula, std::optional<Rat> M_opt) {
  const int p = formula.variable_count;
  const int m = formula.clause_count();
  auto occ = occurrences(formula);

  ReductionMap map;
  map.clause_count = m;
  map.variable_count = p;
  map.occurrence.resize(p);
  for (int i = 0; i < p; ++i) {
    if (occ[i].size() != 3)
      throw std::invalid_argument("formula is not normalized (occurrence count)");
    std::vector<int> pos, neg;
    for (auto [clause, positive] : occ[i]) (positive ? pos : neg).push_back(clause);
    if (pos.size() != 2 || neg.size() != 1)
      throw std::invalid_argument("formula is not normalized (polarity)");
    std::sort(pos.begin(), pos.end());
    map.occurrence[i] = {pos[0], pos[1], neg[0]};
  }

  Rat floor = Rat(2 * m + 8 * p);
  map.M = M_opt.value_or(floor + 1);
  if (map.M <= floor)
    throw std::invalid_argument("M must exceed 2m + 8p = " + rat_to_string(floor));

  Instance inst;
  inst.node_count = 1 + m + 7 * p;
  inst.root = 0;
  map.root = 0;
  map.clause_node.resize(m);
  for (int j = 0; j < m; ++j) map.clause_node[j] = 1 + j;
  map.variable_node.resize(p);
  for (int i = 0; i < p; ++i)
    for (int l = 0; l < 7; ++l) map.variable_node[i][l] = 1 + m + 7 * i + l;

  map.e1.resize(p);
  map.e2.resize(p);
  map.e3.resize(p);
  auto add_edge = [&](int u, int v, Rat w) {
    inst.edges.push_back(Edge{u, v, std::move(w)});
    return inst.edge_count() - 1;
  };
  for (int i = 0; i < p; ++i) {
    const auto& y = map.variable_node[i];
    for (int l = 0; l < 4; ++l) map.e1[i][l] = add_edge(0, y[2 * l], Rat(2));
    for (int l = 0; l < 6; ++l) map.e2[i][l] = add_edge(y[l], y[l + 1], Rat(1));
    map.e3[i][0] = add_edge(y[1], map.clause_node[map.occurrence[i][0]], map.M);
    map.e3[i][1] = add_edge(y[3], map.clause_node[map.occurrence[i][2]], map.M);
    map.e3[i][2] = add_edge(y[5], map.clause_node[map.occurrence[i][1]], map.M);
  }

  std::vector<int> c1, c2;
  for (int j = 0; j < m; ++j) {
    c1.push_back(map.clause_node[j]);
    c2.push_back(map.clause_node[j]);
  }
  for (int i = 0; i < p; ++i) {
    c1.push_back(map.variable_node[i][0]);  // y^1
    c1.push_back(map.variable_node[i][4]);  // y^5
    c2.push_back(map.variable_node[i][2]);  // y^3
    c2.push_back(map.variable_node[i][6]);  // y^7
  }
  std::sort(c1.begin(), c1.end());
  std::sort(c2.begin(), c2.end());
  inst.colors = {std::move(c1), std::move(c2)};
  validate_instance(inst);
  return {std::move(inst), std::move(map)};
}

namespace {

bool literal_true(const CnfFormula::Literal& lit, const std::vector<char>& assignment) {
  return assignment[lit.variable] ? lit.positive : !lit.positive;
}

// Walk along explicit edge ids, directions derived from the node sequence.
std::vector<WalkStep> walk_from(const std::vector<int>& edge_ids, const std::vector<int>& nodes,
                                const std::vector<Edge>& edges) {
  std::vector<WalkStep> walk;
  for (size_t i = 0; i < edge_ids.size(); ++i) {
    const Edge& e = edges[edge_ids[i]];
    walk.push_back(WalkStep{edge_ids[i], e.u == nodes[i]});
  }
  return walk;
}

}  // namespace

std::pair<Routing, CapacityPlan> sat_certificate(const CnfFormula& formula,
                                                 const std::vector<char>& assignment,
                                                 const ReductionMap& map) {
  const int p = formula.variable_count;
  const int m = formula.clause_count();
  if (static_cast<int>(assignment.size()) != p)
    throw std::invalid_argument("assignment length mismatch");

  // Selected literal per clause: the first true one in clause order.
  std::vector<CnfFormula::Literal> selected(m);
  for (int j = 0; j < m; ++j) {
    bool found = false;
    for (const auto& lit : formula.clauses[j])
      if (literal_true(lit, assignment)) {
        selected[j] = lit;
        found = true;
        break;
      }
    if (!found)
      throw std::invalid_argument("assignment does not satisfy clause " + std::to_string(j + 1));
  }

  const int edge_count = 13 * p;
  std::vector<Edge> edges;
  edges.reserve(edge_count);
  {
    // Rebuild endpoint lookup from the map without the instance at hand.
    edges.resize(edge_count);
    for (int i = 0; i < p; ++i) {
      const auto& y = map.variable_node[i];
      for (int l = 0; l < 4; ++l) edges[map.e1[i][l]] = Edge{0, y[2 * l], Rat(2)};
      for (int l = 0; l < 6; ++l) edges[map.e2[i][l]] = Edge{y[l], y[l + 1], Rat(1)};
      edges[map.e3[i][0]] = Edge{y[1], map.clause_node[map.occurrence[i][0]], map.M};
      edges[map.e3[i][1]] = Edge{y[3], map.clause_node[map.occurrence[i][2]], map.M};
      edges[map.e3[i][2]] = Edge{y[5], map.clause_node[map.occurrence[i][1]], map.M};
    }
  }

  Routing routing;
  routing.walks.resize(2);
  auto add_walk = [&](int color, int terminal, const std::vector<int>& edge_ids,
                      const std::vector<int>& nodes) {
    routing.walks[color][terminal] = walk_from(edge_ids, nodes, edges);
  };

  for (int i = 0; i < p; ++i) {
    const auto& y = map.variable_node[i];
    add_walk(0, y[0], {map.e1[i][0]}, {y[0], 0});
    add_walk(0, y[4], {map.e1[i][2]}, {y[4], 0});
    add_walk(1, y[2], {map.e1[i][1]}, {y[2], 0});
    add_walk(1, y[6], {map.e1[i][3]}, {y[6], 0});
  }
  for (int j = 0; j < m; ++j) {
    const int i = selected[j].variable;
    const auto& y = map.variable_node[i];
    const int kj = map.clause_node[j];
    if (j == map.occurrence[i][0]) {  // K_{i1}: via y^2
      add_walk(0, kj, {map.e3[i][0], map.e2[i][1], map.e1[i][1]}, {kj, y[1], y[2], 0});
      add_walk(1, kj, {map.e3[i][0], map.e2[i][0], map.e1[i][0]}, {kj, y[1], y[0], 0});
    } else if (j == map.occurrence[i][1]) {  // K_{i2}: via y^6
      add_walk(0, kj, {map.e3[i][2], map.e2[i][5], map.e1[i][3]}, {kj, y[5], y[6], 0});
      add_walk(1, kj, {map.e3[i][2], map.e2[i][4], map.e1[i][2]}, {kj, y[5], y[4], 0});
    } else {  // K_{i3}: via y^4
      add_walk(0, kj, {map.e3[i][1], map.e2[i][2], map.e1[i][1]}, {kj, y[3], y[2], 0});
      add_walk(1, kj, {map.e3[i][1], map.e2[i][3], map.e1[i][2]}, {kj, y[3], y[4], 0});
    }
  }

  CapacityPlan plan = CapacityPlan::zeros(edge_count);
  for (int c = 0; c < 2; ++c)
    for (const auto& [t, walk] : routing.walks[c])
      for (const WalkStep& step : walk) plan.values[step.edge] = Rat(1);
  return {std::move(routing), std::move(plan)};
}

namespace {

std::vector<int> lex_subsets(int universe, int size) {
  // Bitmasks of all `size`-subsets of [universe], lexicographic by element
  // list; encodes subset ranks used for Kneser vertex ids.
  std::vector<int> masks;
  std::vector<int> pick(size);
  for (int i = 0; i < size; ++i) pick[i] = i;
  while (true) {
    int mask = 0;
    for (int v : pick) mask |= 1 << v;
    masks.push_back(mask);
    int i = size - 1;
    while (i >= 0 && pick[i] == universe - size + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
  }
  return masks;
}

}  // namespace

KneserResult gen_kneser(int s, bool ordered_pairs) {
  if (s < 2) throw std::invalid_argument("s must be at least 2");
  if (s > 6) throw std::invalid_argument("s too large (node count explodes)");

  const auto masks = lex_subsets(2 * s + 1, s);
  const int n = static_cast<int>(masks.size());

  KneserResult out;
  out.inst.node_count = n + 1;
  out.inst.root = 0;
  for (int v = 1; v <= n; ++v) out.inst.edges.push_back(Edge{0, v, Rat(2)});
  std::vector<std::vector<int>> neighbors(n + 1);
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if ((masks[u - 1] & masks[v - 1]) == 0) {
        out.inst.edges.push_back(Edge{u, v, Rat(1)});
        neighbors[u].push_back(v);
        neighbors[v].push_back(u);
      }

  for (int u = 1; u <= n; ++u) {
    std::sort(neighbors[u].begin(), neighbors[u].end());
    for (int v : neighbors[u]) {
      if (!ordered_pairs && v < u) continue;
      std::vector<int> color{u};
      for (int w : neighbors[u])
        if (w != v) color.push_back(w);
      std::sort(color.begin(), color.end());
      out.inst.colors.push_back(std::move(color));
    }
  }
  validate_instance(out.inst);

  const Rat root_x = Rat(s + 1) / n;
  const Rat other_x = Rat(s + 1) / (s * s + 1) - Rat((s + 1) * (s + 1)) / (Rat(s * s + 1) * n);
  out.plan.mode = PlanMode::fractional;
  out.plan.values.assign(out.inst.edge_count(), Rat(0));
  for (int e = 0; e < out.inst.edge_count(); ++e)
    out.plan.values[e] = e < n ? root_x : other_x;
  return out;
}

ExpanderResult gen_expander(int n, int d, int b, int num_colors, std::uint64_t seed) {
  if (n < 2 || d < 1 || d >= n) throw std::invalid_argument("need 1 <= d < n");
  if ((static_cast<std::int64_t>(n) * d) % 2 != 0)
    throw std::invalid_argument("nd must be even for a d-regular graph");
  if (b < 1 || b > n) throw std::invalid_argument("need 1 <= b <= n");
  if (num_colors < 1) throw std::invalid_argument("need at least one color");

  DetRng rng(seed);

  // Pairing model with rejection of loops and duplicate edges. Simple
  // matchings get rare as d grows (about e^{-(d-1)/2 - (d-1)^2/4}), so the
  // attempt cap is generous; draws stay deterministic under the seed.
  std::vector<std::pair<int, int>> graph_edges;
  for (int attempt = 0;; ++attempt) {
    if (attempt >= 500000)
      throw std::runtime_error("pairing model failed to produce a simple graph");
    std::vector<int> stubs;
    stubs.reserve(n * d);
    for (int v = 1; v <= n; ++v)
      for (int i = 0; i < d; ++i) stubs.push_back(v);
    rng.shuffle(stubs);
    std::set<std::pair<int, int>> seen;
    bool ok = true;
    graph_edges.clear();
    for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = std::min(stubs[i], stubs[i + 1]);
      int v = std::max(stubs[i], stubs[i + 1]);
      if (u == v || !seen.emplace(u, v).second) {
        ok = false;
        break;
      }
      graph_edges.emplace_back(u, v);
    }
    if (ok) break;
  }
  std::sort(graph_edges.begin(), graph_edges.end());

  ExpanderResult out;
  out.inst.node_count = n + 1;
  out.inst.root = 0;
  const Rat root_weight = Rat(n) / b;
  for (int v = 1; v <= n; ++v) out.inst.edges.push_back(Edge{0, v, root_weight});
  for (auto [u, v] : graph_edges) out.inst.edges.push_back(Edge{u, v, Rat(1)});

  for (int c = 0; c < num_colors; ++c) out.inst.colors.push_back(rng.sample(1, n, b));
  validate_instance(out.inst);

  out.plan = CapacityPlan::zeros(out.inst.edge_count());
  for (int e = 0; e < b; ++e) out.plan.values[e] = Rat(1);  // b lowest-id root edges
  for (int e = n; e < out.inst.edge_count(); ++e) out.plan.values[e] = Rat(1);
  return out;
}

Instance gen_random(int n, int k, int color_size, std::uint64_t seed, int max_weight,
                    int extra_edges) {
  if (n < 2) throw std::invalid_argument("need at least 2 nodes");
  if (k < 1) throw std::invalid_argument("need at least one color");
  if (color_size < 1 || color_size > n - 1)
    throw std::invalid_argument("color size must be in [1, n-1]");
  if (max_weight < 1) throw std::invalid_argument("max weight must be positive");
  if (extra_edges < 0) extra_edges = n / 2;

  DetRng rng(seed);
  Instance inst;
  inst.node_count = n;
  inst.root = 0;
  for (int v = 1; v < n; ++v) {
    int parent = static_cast<int>(rng.uniform(0, v - 1));
    inst.edges.push_back(Edge{parent, v, Rat(rng.uniform(1, max_weight))});
  }
  for (int i = 0; i < extra_edges; ++i) {
    int u = static_cast<int>(rng.uniform(0, n - 1));
    int v = static_cast<int>(rng.uniform(0, n - 2));
    if (v >= u) ++v;  // distinct endpoints, parallel edges allowed
    inst.edges.push_back(Edge{u, v, Rat(rng.uniform(1, max_weight))});
  }
  for (int c = 0; c < k; ++c) inst.colors.push_back(rng.sample(1, n - 1, color_size));
  validate_instance(inst);
  return inst;
}

}  // namespace sandkit
