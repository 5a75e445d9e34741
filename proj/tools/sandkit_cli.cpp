#include "sandkit/approx.hpp"
#include "sandkit/flow.hpp"
#include "sandkit/generators.hpp"
#include "sandkit/instance.hpp"
#include "sandkit/latency.hpp"
#include "sandkit/lp.hpp"
#include "sandkit/split.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace sandkit;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file '" + path + "'");
  out << content;
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

CapacityPlan load_plan(const std::string& path, const Instance& inst) {
  return parse_plan(read_file(path), inst.edge_count());
}

std::int64_t effective_budget(std::int64_t flag_value) {
  if (const char* env = std::getenv("SANDKIT_BUDGET")) {
    try {
      return std::stoll(env);
    } catch (const std::exception&) {
      throw std::runtime_error("SANDKIT_BUDGET is not an integer");
    }
  }
  return flag_value;
}

int run_solve(const std::string& alg, const std::string& input, const std::string& output,
              std::uint64_t seed, std::int64_t budget) {
  Instance inst = load_instance(input);
  CapacityPlan plan;
  std::string summary;
  bool optimal = true;
  if (alg == "exact") {
    ExactSolveResult res = solve_exact(inst, effective_budget(budget));
    plan = res.plan;
    std::ostringstream ss;
    ss << "optimum=" << rat_to_display(res.optimum) << " nodes=" << res.nodes
       << " cuts=" << res.cuts;
    summary = ss.str();
    optimal = res.optimal;
    if (!res.optimal) {
      std::cout << "budget exhausted: incumbent=" << rat_to_display(res.optimum)
                << " lower_bound=" << res.lower_bound << "\n";
    }
  } else if (alg == "lp") {
    LpSolveResult res = solve_lp(inst);
    plan = res.plan;
    std::ostringstream ss;
    ss << "optimum=" << rat_to_display(res.optimum) << " nodes=0 cuts=" << res.cuts;
    summary = ss.str();
  } else if (alg == "matching") {
    MatchingSolveResult res = matching_solve(inst);
    plan = res.plan;
    for (const auto& pair : res.pairing.pairs) {
      std::cout << "pair " << pair.green << " " << pair.blue
                << " cost=" << rat_to_display(pair.steiner_cost);
      if (pair.green >= res.padded.original_node_count ||
          pair.blue >= res.padded.original_node_count)
        std::cout << " dummy";
      std::cout << "\n";
    }
    summary = "optimum=" + rat_to_display(plan_cost(inst, plan));
  } else if (alg == "sp") {
    plan = shortest_path_solve(inst);
    summary = "optimum=" + rat_to_display(plan_cost(inst, plan));
  } else if (alg == "frt") {
    plan = frt_solve(inst, seed);
    summary = "optimum=" + rat_to_display(plan_cost(inst, plan));
  } else {
    throw std::runtime_error("unknown algorithm '" + alg + "'");
  }
  std::cout << summary << "\n";
  if (!output.empty()) write_file(output, serialize_plan(plan));
  return optimal ? kExitOk : kExitInfeasible;
}

int run_check(const std::string& input, const std::string& plan_path) {
  Instance inst = load_instance(input);
  CapacityPlan plan = load_plan(plan_path, inst);
  FeasibilityResult res = check_feasible(inst, plan);
  if (res.feasible) {
    std::cout << "feasible\n";
    return kExitOk;
  }
  std::cout << "violated cut S={";
  for (size_t i = 0; i < res.violation.node_set.size(); ++i)
    std::cout << (i ? "," : "") << res.violation.node_set[i];
  std::cout << "} rhs=" << res.violation.rhs << " color=" << res.violation.witness_color << "\n";
  return kExitInfeasible;
}

int run_diagnose(const std::string& input, const std::string& plan_path) {
  Instance inst = load_instance(input);
  CapacityPlan plan = load_plan(plan_path, inst);
  if (inst.color_count() != 2) throw std::runtime_error("diagnose requires exactly 2 colors");
  if (plan.mode != PlanMode::integral) throw std::runtime_error("diagnose requires an integral plan");

  // Unit-capacity setting: distribute capacities over parallel copies.
  ExpandedInstance ex = expand_parallel(inst);
  CapacityPlan unit = CapacityPlan::zeros(ex.inst.edge_count());
  for (int e = 0; e < inst.edge_count(); ++e) {
    auto cap = std::min<std::int64_t>(ex.multiplicity,
                                      Rat(plan.values[e]).convert_to<std::int64_t>());
    for (std::int64_t c = 0; c < cap; ++c) unit.values[e * ex.multiplicity + c] = Rat(1);
  }
  FeasibilityResult feas = check_feasible(ex.inst, unit);
  if (!feas.feasible) {
    std::cout << "infeasible plan; nothing to diagnose\n";
    return kExitInfeasible;
  }
  Routing routing = extract_routing(ex.inst, unit);
  SplitReport report = split_report(ex.inst, routing);
  if (ex.multiplicity > 1)
    std::cout << "# edge ids refer to the parallel expansion; original id = id / "
              << ex.multiplicity << "\n";
  std::cout << serialize_split_report(report);
  return kExitOk;
}

int run_latency_solve(const std::string& alg, const std::string& input,
                      const std::string& output) {
  Instance inst = load_instance(input);
  LatencyWalk walk;
  if (alg == "greedy")
    walk = latency_solve_greedy(inst);
  else if (alg == "exact")
    walk = latency_exact(inst);
  else
    throw std::runtime_error("unknown latency algorithm '" + alg + "'");
  std::cout << "cost=" << rat_to_display(walk.cost) << " prefixes=";
  for (size_t j = 0; j < walk.prefix_lengths.size(); ++j)
    std::cout << (j ? "," : "") << rat_to_display(walk.prefix_lengths[j]);
  std::cout << "\n";
  if (!output.empty()) {
    std::ostringstream ss;
    for (size_t i = 0; i < walk.vertices.size(); ++i) ss << (i ? " " : "") << walk.vertices[i];
    ss << "\n";
    write_file(output, ss.str());
  }
  return kExitOk;
}

int run_latency_eval(const std::string& input, const std::string& walk_path) {
  Instance inst = load_instance(input);
  std::istringstream ss(read_file(walk_path));
  std::vector<int> walk;
  int v;
  while (ss >> v) walk.push_back(v);
  WalkCostResult res = walk_cost(inst, walk);
  std::cout << "cost=" << rat_to_display(res.cost) << " prefixes=";
  for (size_t j = 0; j < res.prefix_lengths.size(); ++j)
    std::cout << (j ? "," : "") << rat_to_display(res.prefix_lengths[j]);
  std::cout << "\n";
  return kExitOk;
}

void emit_csv_header() { std::cout << "family,param,algorithm,cost,bound,ratio,seed\n"; }

void emit_csv_row(const std::string& family, const std::string& param, const std::string& alg,
                  double cost, double bound, double ratio, std::uint64_t seed) {
  std::ostringstream ss;
  ss.precision(10);
  ss << family << "," << param << "," << alg << "," << cost << "," << bound << "," << ratio << ","
     << seed;
  std::cout << ss.str() << "\n";
}

int run_gap_report(const std::string& family, int s, int n, int d, int b, int colors,
                   std::uint64_t seed, int frt_seeds) {
  emit_csv_header();
  if (family == "kneser") {
    KneserResult kn = gen_kneser(s);
    if (!separate(kn.inst, kn.plan).empty()) {
      std::cout << "kneser fractional plan failed separation\n";
      return kExitInfeasible;
    }
    double cost = rat_to_double(plan_cost(kn.inst, kn.plan));
    double bound = rat_to_double(mst_cost(kn.inst));
    emit_csv_row("kneser", std::to_string(s), "fractional", cost, bound, bound / cost, 0);
    return kExitOk;
  }
  if (family == "expander") {
    ExpanderResult ex = gen_expander(n, d, b, colors, seed);
    FeasibilityResult feas = check_feasible(ex.inst, ex.plan);
    if (!feas.feasible) {
      std::cout << "expander reference plan infeasible for a sampled color\n";
      return kExitInfeasible;
    }
    double ref = rat_to_double(plan_cost(ex.inst, ex.plan));
    emit_csv_row("expander", std::to_string(n), "reference", ref, ref, 1.0, seed);
    std::vector<double> costs;
    for (int fs = 0; fs < frt_seeds; ++fs) {
      CapacityPlan plan = frt_solve(ex.inst, fs);
      double c = rat_to_double(plan_cost(ex.inst, plan));
      emit_csv_row("expander", std::to_string(n), "frt", c, ref, c / ref, fs);
      costs.push_back(c);
    }
    std::sort(costs.begin(), costs.end());
    double median = costs.size() % 2 == 1
                        ? costs[costs.size() / 2]
                        : 0.5 * (costs[costs.size() / 2 - 1] + costs[costs.size() / 2]);
    emit_csv_row("expander", std::to_string(n), "frt-median", median, ref, median / ref, seed);
    return kExitOk;
  }
  throw std::runtime_error("unknown family '" + family + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"f-SAND solver toolkit"};
  app.require_subcommand(1);

  // solve
  std::string solve_alg, solve_in, solve_out;
  std::uint64_t solve_seed = 0;
  std::int64_t solve_budget = 1000000;
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance");
  solve_cmd->add_option("--alg", solve_alg, "exact|lp|matching|sp|frt")->required();
  solve_cmd->add_option("-i,--instance", solve_in, "instance file")->required();
  solve_cmd->add_option("-o,--output", solve_out, "plan output file");
  solve_cmd->add_option("--seed", solve_seed, "seed for randomized algorithms");
  solve_cmd->add_option("--budget", solve_budget, "branch-and-bound node budget");

  // check
  std::string check_in, check_plan;
  auto* check_cmd = app.add_subcommand("check", "check a plan for feasibility");
  check_cmd->add_option("-i,--instance", check_in)->required();
  check_cmd->add_option("-p,--plan", check_plan)->required();

  // diagnose
  std::string diag_in, diag_plan;
  auto* diag_cmd = app.add_subcommand("diagnose", "split-structure diagnostics for a plan");
  diag_cmd->add_option("-i,--instance", diag_in)->required();
  diag_cmd->add_option("-p,--plan", diag_plan)->required();

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate instances");
  gen_cmd->require_subcommand(1);
  std::string gen_out, gen_plan_out;

  std::string sat_cnf;
  std::string sat_M;
  auto* gen_sat_cmd = gen_cmd->add_subcommand("sat", "SAT-reduction instance");
  gen_sat_cmd->add_option("--cnf", sat_cnf, "DIMACS cnf input")->required();
  gen_sat_cmd->add_option("--M", sat_M, "cost of clause edges (default 2m+8p+1)");
  gen_sat_cmd->add_option("-o,--output", gen_out)->required();
  gen_sat_cmd->add_option("--plan-out", gen_plan_out,
                          "write the completeness certificate plan (brute-force SAT)");

  int kneser_s = 2;
  auto* gen_kneser_cmd = gen_cmd->add_subcommand("kneser", "odd-graph gap instance");
  gen_kneser_cmd->add_option("--s", kneser_s)->required();
  gen_kneser_cmd->add_option("-o,--output", gen_out)->required();
  gen_kneser_cmd->add_option("--plan-out", gen_plan_out, "write the fractional plan");

  int exp_n = 16, exp_d = 6, exp_b = 4, exp_colors = 50;
  std::uint64_t exp_seed = 1;
  auto* gen_exp_cmd = gen_cmd->add_subcommand("expander", "expander tree-gap instance");
  gen_exp_cmd->add_option("--n", exp_n)->required();
  gen_exp_cmd->add_option("--d", exp_d)->required();
  gen_exp_cmd->add_option("--b", exp_b)->required();
  gen_exp_cmd->add_option("--colors", exp_colors)->required();
  gen_exp_cmd->add_option("--seed", exp_seed);
  gen_exp_cmd->add_option("-o,--output", gen_out)->required();
  gen_exp_cmd->add_option("--plan-out", gen_plan_out, "write the reference plan");

  int rnd_n = 8, rnd_k = 2, rnd_color_size = 2, rnd_max_weight = 10, rnd_extra = -1;
  std::uint64_t rnd_seed = 1;
  auto* gen_rnd_cmd = gen_cmd->add_subcommand("random", "random connected instance");
  gen_rnd_cmd->add_option("--n", rnd_n)->required();
  gen_rnd_cmd->add_option("--k", rnd_k)->required();
  gen_rnd_cmd->add_option("--color-size", rnd_color_size)->required();
  gen_rnd_cmd->add_option("--seed", rnd_seed);
  gen_rnd_cmd->add_option("--max-weight", rnd_max_weight);
  gen_rnd_cmd->add_option("--extra-edges", rnd_extra);
  gen_rnd_cmd->add_option("-o,--output", gen_out)->required();

  // latency
  auto* lat_cmd = app.add_subcommand("latency", "latency variant");
  lat_cmd->require_subcommand(1);
  std::string lat_alg, lat_in, lat_out, lat_walk;
  auto* lat_solve_cmd = lat_cmd->add_subcommand("solve", "solve the latency variant");
  lat_solve_cmd->add_option("--alg", lat_alg, "greedy|exact")->required();
  lat_solve_cmd->add_option("-i,--instance", lat_in)->required();
  lat_solve_cmd->add_option("-o,--output", lat_out, "walk output file");
  auto* lat_eval_cmd = lat_cmd->add_subcommand("eval", "evaluate a walk file");
  lat_eval_cmd->add_option("-i,--instance", lat_in)->required();
  lat_eval_cmd->add_option("--walk", lat_walk, "whitespace-separated vertex ids")->required();

  // gap-report
  std::string gap_family;
  int gap_s = 3, gap_n = 16, gap_d = 6, gap_b = 4, gap_colors = 50, gap_frt_seeds = 16;
  std::uint64_t gap_seed = 1;
  auto* gap_cmd = app.add_subcommand("gap-report", "integrality-gap family sweeps (CSV)");
  gap_cmd->add_option("--family", gap_family, "kneser|expander")->required();
  gap_cmd->add_option("--s", gap_s);
  gap_cmd->add_option("--n", gap_n);
  gap_cmd->add_option("--d", gap_d);
  gap_cmd->add_option("--b", gap_b);
  gap_cmd->add_option("--colors", gap_colors);
  gap_cmd->add_option("--seed", gap_seed);
  gap_cmd->add_option("--frt-seeds", gap_frt_seeds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_alg, solve_in, solve_out, solve_seed, solve_budget);
    if (check_cmd->parsed()) return run_check(check_in, check_plan);
    if (diag_cmd->parsed()) return run_diagnose(diag_in, diag_plan);
    if (gen_cmd->parsed()) {
      if (gen_sat_cmd->parsed()) {
        CnfFormula raw = parse_dimacs(read_file(sat_cnf));
        NormalizeResult norm = normalize_formula(raw);
        std::optional<Rat> M;
        if (!sat_M.empty()) M = parse_rational(sat_M);
        auto [inst, map] = gen_sat(norm.formula, M);
        write_file(gen_out, serialize_instance(inst));
        if (!gen_plan_out.empty()) {
          if (norm.formula.variable_count > 20)
            throw std::runtime_error("brute-force certificate limited to 20 variables");
          std::vector<char> assignment(norm.formula.variable_count, 0);
          bool found = false;
          for (std::uint64_t bits = 0; bits < (1ull << norm.formula.variable_count); ++bits) {
            for (int i = 0; i < norm.formula.variable_count; ++i)
              assignment[i] = (bits >> i) & 1;
            bool sat = true;
            for (const auto& clause : norm.formula.clauses) {
              bool any = false;
              for (const auto& lit : clause)
                any |= assignment[lit.variable] ? lit.positive : !lit.positive;
              if (!any) {
                sat = false;
                break;
              }
            }
            if (sat) {
              found = true;
              break;
            }
          }
          if (!found) throw std::runtime_error("formula is unsatisfiable; no certificate");
          auto [routing, plan] = sat_certificate(norm.formula, assignment, map);
          write_file(gen_plan_out, serialize_plan(plan));
        }
        return kExitOk;
      }
      if (gen_kneser_cmd->parsed()) {
        KneserResult kn = gen_kneser(kneser_s);
        write_file(gen_out, serialize_instance(kn.inst));
        if (!gen_plan_out.empty()) write_file(gen_plan_out, serialize_plan(kn.plan));
        return kExitOk;
      }
      if (gen_exp_cmd->parsed()) {
        ExpanderResult ex = gen_expander(exp_n, exp_d, exp_b, exp_colors, exp_seed);
        write_file(gen_out, serialize_instance(ex.inst));
        if (!gen_plan_out.empty()) write_file(gen_plan_out, serialize_plan(ex.plan));
        return kExitOk;
      }
      if (gen_rnd_cmd->parsed()) {
        Instance inst = gen_random(rnd_n, rnd_k, rnd_color_size, rnd_seed, rnd_max_weight,
                                   rnd_extra);
        write_file(gen_out, serialize_instance(inst));
        return kExitOk;
      }
    }
    if (lat_cmd->parsed()) {
      if (lat_solve_cmd->parsed()) return run_latency_solve(lat_alg, lat_in, lat_out);
      if (lat_eval_cmd->parsed()) return run_latency_eval(lat_in, lat_walk);
    }
    if (gap_cmd->parsed())
      return run_gap_report(gap_family, gap_s, gap_n, gap_d, gap_b, gap_colors, gap_seed,
                            gap_frt_seeds);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
