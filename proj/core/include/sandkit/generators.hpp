#pragma once

#include "sandkit/flow.hpp"
#include "sandkit/instance.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace sandkit {

// CNF formula in the restricted shape the hardness construction needs:
// every variable occurs in exactly 3 distinct clauses, exactly once negated.
struct CnfFormula {
  struct Literal {
    int variable = 0;  // 0-based
    bool positive = true;
    bool operator==(const Literal&) const = default;
  };
  int variable_count = 0;
  std::vector<std::vector<Literal>> clauses;

  int clause_count() const { return static_cast<int>(clauses.size()); }
  bool operator==(const CnfFormula&) const = default;
};

CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(const std::string& text);

// Flips every variable with two negative occurrences so each ends up negated
// exactly once. Variables with zero or three negative occurrences cannot be
// brought into that shape by flipping and are rejected, as is any variable
// whose occurrence count differs from 3.
struct NormalizeResult {
  CnfFormula formula;
  std::vector<char> flipped;  // per variable
};
NormalizeResult normalize_formula(const CnfFormula& raw);

// Bookkeeping for the SAT-to-two-color reduction: node roles, edge roles and
// the occurrence indices of each variable (the two clauses holding the
// positive literal, then the clause holding the negated one).
struct ReductionMap {
  Rat M;
  int clause_count = 0;
  int variable_count = 0;
  int root = 0;
  std::vector<int> clause_node;                      // k_j
  std::vector<std::array<int, 7>> variable_node;     // y_i^1..y_i^7
  std::vector<std::array<int, 4>> e1;                // {r, y^{2l-1}} edge ids
  std::vector<std::array<int, 6>> e2;                // {y^l, y^{l+1}} edge ids
  std::vector<std::array<int, 3>> e3;                // gadget-to-clause edge ids
  std::vector<std::array<int, 3>> occurrence;        // {i1, i2, i3} 0-based clause ids
};

// Two-color instance with 1+m+7p nodes and 13p edges; cost 2 on root edges,
// 1 on chain edges, M on clause edges. Default M = 2m + 8p + 1.
std::pair<Instance, ReductionMap> gen_sat(const CnfFormula& formula,
                                          std::optional<Rat> M = std::nullopt);

// The completeness routing for a satisfying assignment: every y-terminal
// takes its direct root edge, every clause routes through the gadget of one
// selected true literal (the first true literal in clause order). The plan
// installs one unit on every used edge and costs exactly (M+2)m + 8p.
std::pair<Routing, CapacityPlan> sat_certificate(const CnfFormula& formula,
                                                 const std::vector<char>& assignment,
                                                 const ReductionMap& map);

// Odd graph O_s plus a root adjacent to everything; root edges cost 2,
// graph edges cost 1; one color per ordered adjacent pair (u,v):
// C_uv = ({u} ∪ N(u)) - {v}. The attached fractional plan puts (s+1)/n on
// root edges and (s+1)/(s^2+1) - (s+1)^2/((s^2+1)n) elsewhere.
struct KneserResult {
  Instance inst;
  CapacityPlan plan;  // fractional
};
KneserResult gen_kneser(int s, bool ordered_pairs = true);

// Random d-regular graph (pairing model) plus a root adjacent to everything;
// root edges cost n/b, graph edges cost 1; colors are sampled b-subsets.
// Reference plan: unit capacity on all graph edges plus the b lowest root
// edges, cost nd/2 + n.
struct ExpanderResult {
  Instance inst;
  CapacityPlan plan;  // integral
};
ExpanderResult gen_expander(int n, int d, int b, int num_colors, std::uint64_t seed);

// Connected random instance: random attachment tree plus extra edges
// (parallel edges possible), integer weights in [1, max_weight], k colors of
// the given size. extra_edges < 0 defaults to n/2.
Instance gen_random(int n, int k, int color_size, std::uint64_t seed, int max_weight,
                    int extra_edges = -1);

}  // namespace sandkit
