#include "sandkit/instance.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

namespace sandkit {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& tok, int line_no, const char* what) {
  try {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line_no, std::string("bad ") + what + " '" + tok + "'");
  }
}

}  // namespace

Instance parse_instance(std::istream& in) {
  Instance inst;
  bool seen_nodes = false, seen_root = false;
  int line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];

    if (kw == "nodes") {
      if (seen_nodes) throw ParseError(line_no, "duplicate nodes line");
      if (toks.size() != 2) throw ParseError(line_no, "expected 'nodes <n>'");
      inst.node_count = parse_int(toks[1], line_no, "node count");
      if (inst.node_count <= 0) throw ParseError(line_no, "node count must be positive");
      seen_nodes = true;
    } else if (kw == "root") {
      if (!seen_nodes) throw ParseError(line_no, "root before nodes line");
      if (seen_root) throw ParseError(line_no, "duplicate root");
      if (toks.size() != 2) throw ParseError(line_no, "expected 'root <id>'");
      inst.root = parse_int(toks[1], line_no, "root id");
      if (inst.root < 0 || inst.root >= inst.node_count)
        throw ParseError(line_no, "node id out of range");
      seen_root = true;
    } else if (kw == "edge") {
      if (!seen_nodes) throw ParseError(line_no, "edge before nodes line");
      if (toks.size() != 4) throw ParseError(line_no, "expected 'edge <u> <v> <w>'");
      Edge e;
      e.u = parse_int(toks[1], line_no, "node id");
      e.v = parse_int(toks[2], line_no, "node id");
      if (e.u < 0 || e.u >= inst.node_count || e.v < 0 || e.v >= inst.node_count)
        throw ParseError(line_no, "node id out of range");
      if (e.u == e.v) throw ParseError(line_no, "self-loop rejected");
      try {
        e.weight = parse_rational(toks[3]);
      } catch (const std::exception& ex) {
        throw ParseError(line_no, std::string("bad weight: ") + ex.what());
      }
      if (e.weight < 0) throw ParseError(line_no, "negative weight");
      inst.edges.push_back(std::move(e));
    } else if (kw == "color") {
      if (!seen_nodes) throw ParseError(line_no, "color before nodes line");
      if (!seen_root) throw ParseError(line_no, "color before root line");
      if (toks.size() < 3) throw ParseError(line_no, "expected 'color <i>: <id>...'");
      std::string idx_tok = toks[1];
      if (idx_tok.empty() || idx_tok.back() != ':')
        throw ParseError(line_no, "expected ':' after color index");
      idx_tok.pop_back();
      int idx = parse_int(idx_tok, line_no, "color index");
      if (idx != inst.color_count())
        throw ParseError(line_no, "color index out of order (expected " +
                                      std::to_string(inst.color_count()) + ")");
      std::set<int> members;
      for (size_t i = 2; i < toks.size(); ++i) {
        int id = parse_int(toks[i], line_no, "node id");
        if (id < 0 || id >= inst.node_count)
          throw ParseError(line_no, "color references unknown node " + std::to_string(id));
        if (id == inst.root) throw ParseError(line_no, "color contains root");
        members.insert(id);
      }
      if (members.empty()) throw ParseError(line_no, "empty color");
      inst.colors.emplace_back(members.begin(), members.end());
    } else {
      throw ParseError(line_no, "unknown directive '" + kw + "'");
    }
  }
  if (!seen_nodes) throw ParseError(line_no, "missing nodes line");
  if (!seen_root) throw ParseError(line_no, "missing root line");
  validate_instance(inst);
  return inst;
}

Instance parse_instance(const std::string& text) {
  std::istringstream ss(text);
  return parse_instance(ss);
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "nodes " << inst.node_count << "\n";
  out << "root " << inst.root << "\n";
  for (const Edge& e : inst.edges)
    out << "edge " << e.u << " " << e.v << " " << rat_to_string(e.weight) << "\n";
  for (int i = 0; i < inst.color_count(); ++i) {
    out << "color " << i << ":";
    for (int id : inst.colors[i]) out << " " << id;
    out << "\n";
  }
  return out.str();
}

CapacityPlan parse_plan(std::istream& in, int expected_edges) {
  CapacityPlan plan;
  bool seen_header = false;
  int declared = -1;
  int line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "plan") {
      if (seen_header) throw ParseError(line_no, "duplicate plan header");
      if (toks.size() != 3) throw ParseError(line_no, "expected 'plan <mode> <edge-count>'");
      if (toks[1] == "integral")
        plan.mode = PlanMode::integral;
      else if (toks[1] == "fractional")
        plan.mode = PlanMode::fractional;
      else
        throw ParseError(line_no, "unknown plan mode '" + toks[1] + "'");
      declared = parse_int(toks[2], line_no, "edge count");
      if (declared < 0) throw ParseError(line_no, "negative edge count");
      plan.values.assign(declared, Rat(0));
      seen_header = true;
    } else if (toks[0] == "cap") {
      if (!seen_header) throw ParseError(line_no, "cap before plan header");
      if (toks.size() != 3) throw ParseError(line_no, "expected 'cap <edge-id> <value>'");
      int id = parse_int(toks[1], line_no, "edge id");
      if (id < 0 || id >= declared) throw ParseError(line_no, "edge id out of range");
      Rat v;
      try {
        v = parse_rational(toks[2]);
      } catch (const std::exception& ex) {
        throw ParseError(line_no, std::string("bad capacity: ") + ex.what());
      }
      if (v < 0) throw ParseError(line_no, "negative capacity");
      if (plan.mode == PlanMode::integral && !rat_is_integer(v))
        throw ParseError(line_no, "non-integer capacity in integral plan");
      plan.values[id] = v;
    } else {
      throw ParseError(line_no, "unknown directive '" + toks[0] + "'");
    }
  }
  if (!seen_header) throw ParseError(line_no, "missing plan header");
  if (expected_edges >= 0 && declared != expected_edges)
    throw ParseError(line_no, "plan edge count " + std::to_string(declared) +
                                  " does not match instance edge count " +
                                  std::to_string(expected_edges));
  return plan;
}

CapacityPlan parse_plan(const std::string& text, int expected_edges) {
  std::istringstream ss(text);
  return parse_plan(ss, expected_edges);
}

std::string serialize_plan(const CapacityPlan& plan) {
  std::ostringstream out;
  out << "plan " << (plan.mode == PlanMode::integral ? "integral" : "fractional") << " "
      << plan.values.size() << "\n";
  for (size_t i = 0; i < plan.values.size(); ++i)
    if (plan.values[i] != 0) out << "cap " << i << " " << rat_to_string(plan.values[i]) << "\n";
  return out.str();
}

}  // namespace sandkit
