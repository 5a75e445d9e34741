#include "sandkit/split.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <sstream>

namespace sandkit {

namespace {

constexpr int kGreen = 0;
constexpr int kBlue = 1;

struct EdgeUse {
  int terminal = -1;
  int position = -1;    // step index within the walk
  bool forward = true;  // traversal direction relative to stored endpoints
};

}  // namespace

SplitReport split_report(const Instance& inst, const Routing& routing) {
  if (inst.color_count() != 2)
    throw std::invalid_argument("split_report requires exactly 2 colors");
  if (routing.walks.size() != 2) throw std::invalid_argument("routing color count mismatch");

  // Per color, who uses each edge (at most one walk per color).
  std::vector<std::map<int, EdgeUse>> use(2);
  for (int c = 0; c < 2; ++c) {
    for (const auto& [terminal, walk] : routing.walks[c]) {
      for (size_t pos = 0; pos < walk.size(); ++pos) {
        const WalkStep& step = walk[pos];
        auto [it, inserted] = use[c].emplace(
            step.edge, EdgeUse{terminal, static_cast<int>(pos), step.forward});
        if (!inserted)
          throw std::invalid_argument("routing violates unit capacity per color on edge " +
                                      std::to_string(step.edge));
      }
    }
  }

  SplitReport rep;
  rep.w_blue = rep.w_green = rep.w_thin = rep.w_wide = Rat(0);

  for (const auto& [edge, gu] : use[kGreen])
    if (use[kBlue].count(edge)) rep.shared_edges.push_back(edge);

  // Maximal runs of consecutive shared edges along each green walk with a
  // fixed blue partner and a fixed orientation agreement.
  std::map<int, std::vector<int>> splits_on_green, splits_on_blue;  // terminal -> split ids
  for (const auto& [g, walk] : routing.walks[kGreen]) {
    size_t i = 0;
    while (i < walk.size()) {
      auto blue_it = use[kBlue].find(walk[i].edge);
      if (blue_it == use[kBlue].end()) {
        ++i;
        continue;
      }
      int b = blue_it->second.terminal;
      bool agree = blue_it->second.forward == walk[i].forward;
      size_t j = i;
      while (j + 1 < walk.size()) {
        auto next = use[kBlue].find(walk[j + 1].edge);
        if (next == use[kBlue].end() || next->second.terminal != b ||
            (next->second.forward == walk[j + 1].forward) != agree)
          break;
        ++j;
      }
      Split split;
      split.green = g;
      split.blue = b;
      split.kind = agree ? SplitKind::thin : SplitKind::wide;
      for (size_t k = i; k <= j; ++k) split.edges.push_back(walk[k].edge);
      const Edge& first = inst.edges[walk[i].edge];
      const Edge& last = inst.edges[walk[j].edge];
      split.u = walk[i].forward ? first.u : first.v;
      split.v = walk[j].forward ? last.v : last.u;
      int id = static_cast<int>(rep.splits.size());
      rep.splits.push_back(std::move(split));
      splits_on_green[g].push_back(id);
      splits_on_blue[rep.splits[id].blue].push_back(id);
      i = j + 1;
    }
  }

  // Order each blue terminal's splits by first appearance along its walk
  // (the edges of a split need not be contiguous in the blue walk for
  // arbitrary routings, so the earliest position decides).
  auto blue_pos = [&](int split_id) {
    int best = INT_MAX;
    for (int e : rep.splits[split_id].edges) best = std::min(best, use[kBlue].at(e).position);
    return best;
  };
  for (auto& [b, ids] : splits_on_blue) {
    std::sort(ids.begin(), ids.end(),
              [&](int a, int c) { return blue_pos(a) < blue_pos(c); });
  }

  // Sharing terminals: greens first (ascending), then blues.
  std::set<int> sharing_greens, sharing_blues;
  for (const auto& [g, ids] : splits_on_green) sharing_greens.insert(g);
  for (const auto& [b, ids] : splits_on_blue) sharing_blues.insert(b);
  std::map<std::pair<int, int>, int> terminal_vertex;  // (color, node) -> vertex
  auto term_key = [](int color, int node) { return std::pair{color, node}; };
  for (int g : sharing_greens) {
    terminal_vertex[term_key(kGreen, g)] = rep.vertex_of_terminal_index(rep.terminals.size());
    rep.terminals.push_back(g);
  }
  for (int b : sharing_blues) {
    terminal_vertex[term_key(kBlue, b)] = rep.vertex_of_terminal_index(rep.terminals.size());
    rep.terminals.push_back(b);
  }
  for (const auto& [t, walk] : routing.walks[kGreen])
    if (!sharing_greens.count(t)) rep.non_sharing.push_back(t);
  for (const auto& [t, walk] : routing.walks[kBlue])
    if (!sharing_blues.count(t)) rep.non_sharing.push_back(t);

  // Split graph: terminal -> first split, then consecutive-split edges.
  auto chain = [&](const std::map<int, std::vector<int>>& order, int color) {
    for (const auto& [t, ids] : order) {
      rep.split_graph.push_back(
          SplitGraphEdge{terminal_vertex.at(term_key(color, t)), ids.front(), color});
      for (size_t i = 0; i + 1 < ids.size(); ++i)
        rep.split_graph.push_back(SplitGraphEdge{ids[i], ids[i + 1], color});
    }
  };
  chain(splits_on_green, kGreen);
  chain(splits_on_blue, kBlue);

  // Alternating-path extraction. Starting from each green terminal we walk:
  // into a split along its green in-edge, out via the other in-edge; when
  // that in-edge comes from another split s2, s2 must offer its other
  // out-edge (opposite color), and so on until a terminal closes the path.
  std::vector<std::vector<int>> in_edges(rep.splits.size()), out_edges(rep.splits.size());
  std::vector<char> edge_used(rep.split_graph.size(), 0);
  for (size_t i = 0; i < rep.split_graph.size(); ++i) {
    const auto& e = rep.split_graph[i];
    if (e.to < static_cast<int>(rep.splits.size())) in_edges[e.to].push_back(i);
    if (e.from < static_cast<int>(rep.splits.size())) out_edges[e.from].push_back(i);
  }
  const int split_count = static_cast<int>(rep.splits.size());
  for (int gi = 0; gi < static_cast<int>(sharing_greens.size()); ++gi) {
    int g = rep.terminals[gi];
    int gv = rep.vertex_of_terminal_index(gi);
    int start_edge = -1;
    for (size_t i = 0; i < rep.split_graph.size(); ++i)
      if (!edge_used[i] && rep.split_graph[i].from == gv) start_edge = static_cast<int>(i);
    if (start_edge < 0) continue;

    std::vector<int> seq{gv};
    int cur_edge = start_edge;
    bool complete = false;
    while (true) {
      edge_used[cur_edge] = 1;
      int split = rep.split_graph[cur_edge].to;
      seq.push_back(split);
      // The split's other in-edge.
      int other_in = -1;
      for (int i : in_edges[split])
        if (!edge_used[i] && i != cur_edge) other_in = i;
      if (other_in < 0) break;
      edge_used[other_in] = 1;
      int w = rep.split_graph[other_in].from;
      if (w >= split_count) {
        seq.push_back(w);
        complete = true;
        break;
      }
      // w is a split: continue along its other out-edge (opposite color).
      int next_out = -1;
      for (int i : out_edges[w])
        if (!edge_used[i] && rep.split_graph[i].color != rep.split_graph[other_in].color)
          next_out = i;
      seq.push_back(w);
      if (next_out < 0) break;
      cur_edge = next_out;
    }
    if (complete) {
      int tail = seq.back();
      int tail_node = rep.terminals[tail - split_count];
      rep.fresh_pairs.emplace_back(g, tail_node);
      rep.alternating_paths.push_back(std::move(seq));
    } else {
      rep.broken_paths.push_back(std::move(seq));
    }
  }

  // Weight decomposition over used edges.
  std::set<int> shared(rep.shared_edges.begin(), rep.shared_edges.end());
  for (const auto& [edge, gu] : use[kGreen])
    if (!shared.count(edge)) rep.w_green += inst.edges[edge].weight;
  for (const auto& [edge, bu] : use[kBlue])
    if (!shared.count(edge)) rep.w_blue += inst.edges[edge].weight;
  for (const Split& s : rep.splits)
    for (int e : s.edges)
      (s.kind == SplitKind::thin ? rep.w_thin : rep.w_wide) += inst.edges[e].weight;

  return rep;
}

std::string serialize_split_report(const SplitReport& rep) {
  std::ostringstream out;
  for (const Split& s : rep.splits) {
    out << "split " << (s.kind == SplitKind::wide ? "wide" : "thin") << " " << s.u << " " << s.v
        << " g=" << s.green << " b=" << s.blue << " edges=";
    for (size_t i = 0; i < s.edges.size(); ++i) out << (i ? "," : "") << s.edges[i];
    out << "\n";
  }
  for (const auto& [g, b] : rep.fresh_pairs) out << "fresh " << g << " " << b << "\n";
  for (int t : rep.non_sharing) out << "nonsharing " << t << "\n";
  out << "weights wb=" << rat_to_display(rep.w_blue) << " wg=" << rat_to_display(rep.w_green)
      << " wt=" << rat_to_display(rep.w_thin) << " wd=" << rat_to_display(rep.w_wide) << "\n";
  return out.str();
}

}  // namespace sandkit
