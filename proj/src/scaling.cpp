#include "mwc/scaling.hpp"

#include <algorithm>
#include <stdexcept>

namespace mwc {

std::vector<std::int64_t> subdivision_lengths(const WeightedGraph& g, const Rational& gamma) {
  if (!gamma.positive()) throw std::invalid_argument("graph_scaling: gamma must be positive");
  std::vector<std::int64_t> lens(g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    lens[i] = std::max<std::int64_t>(1, ceil_div(g.edges[i].w, gamma));
  return lens;
}

std::pair<int, int> ScaledGraph::locate(int node) const {
  // Interior ids are contiguous per edge; binary search over offsets.
  auto it = std::upper_bound(sub_offset.begin(), sub_offset.end(), node);
  int e = static_cast<int>(it - sub_offset.begin()) - 1;
  return {e, static_cast<int>(node - sub_offset[e] + 1)};
}

int ScaledGraph::path_node(int e, std::int64_t pos) const {
  // Interior positions only (1..len-1); endpoints are the base edge's u and v.
  return static_cast<int>(sub_offset[e] + pos - 1);
}

ScaledGraph graph_scaling(const WeightedGraph& g, const Rational& gamma) {
  if (g.directed) throw std::invalid_argument("graph_scaling: undirected graphs only");
  ScaledGraph sg;
  sg.gamma = gamma;
  sg.base_n = g.n;
  sg.edge_len = subdivision_lengths(g, gamma);
  sg.sub_offset.resize(g.edges.size());
  std::int64_t next = g.n;
  std::int64_t scaled_edges = 0;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    sg.sub_offset[i] = next;
    next += sg.edge_len[i] - 1;
    scaled_edges += sg.edge_len[i];
  }
  constexpr std::int64_t kMaxScaledNodes = 50'000'000;
  if (next > kMaxScaledNodes)
    throw std::invalid_argument("graph_scaling: scaled graph too large to materialize");

  std::vector<Edge> unit_edges;
  unit_edges.reserve(scaled_edges);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    std::int64_t len = sg.edge_len[i];
    int prev = e.u;
    for (std::int64_t pos = 1; pos < len; ++pos) {
      int node = static_cast<int>(sg.sub_offset[i] + pos - 1);
      unit_edges.push_back({prev, node, 1});
      prev = node;
    }
    unit_edges.push_back({prev, e.v, 1});
  }
  sg.unit_graph = WeightedGraph::build(static_cast<int>(next), false, std::move(unit_edges));
  return sg;
}

std::int64_t lift_path(const ScaledGraph& sg, const WeightedGraph& g, const PathRecord& base_path) {
  std::int64_t total = 0;
  for (int i = 0; i < base_path.hops; ++i) {
    int e = g.edge_between(base_path.nodes[i], base_path.nodes[i + 1]);
    if (e < 0) throw std::invalid_argument("lift_path: path edge absent from base graph");
    total += sg.edge_len[e];
  }
  return total;
}

PathRecord prescale_path(const ScaledGraph& sg, const WeightedGraph& g,
                         const std::vector<int>& scaled_path) {
  if (scaled_path.empty()) throw std::invalid_argument("prescale_path: empty path");
  if (!sg.is_original(scaled_path.front()) || !sg.is_original(scaled_path.back()))
    throw std::invalid_argument("prescale_path: endpoints must be original nodes");

  std::vector<int> base_nodes{scaled_path.front()};
  std::size_t i = 0;
  while (i + 1 < scaled_path.size()) {
    int u = scaled_path[i];
    int nxt = scaled_path[i + 1];
    // Determine which base edge this step enters.
    int e;
    bool from_u_side;
    if (sg.is_original(nxt)) {
      e = g.edge_between(u, nxt);
      if (e < 0 || sg.edge_len[e] != 1)
        throw std::invalid_argument("prescale_path: not the image of a base path");
      base_nodes.push_back(nxt);
      ++i;
      continue;
    }
    auto [edge_id, pos] = sg.locate(nxt);
    e = edge_id;
    if (u == g.edges[e].u && pos == 1) {
      from_u_side = true;
    } else if (u == g.edges[e].v && pos == sg.edge_len[e] - 1) {
      from_u_side = false;
    } else {
      throw std::invalid_argument("prescale_path: enters a subdivision path mid-way");
    }
    // Walk the full interior; any deviation means partial traversal.
    std::int64_t len = sg.edge_len[e];
    for (std::int64_t step = 2; step <= len; ++step) {
      if (i + step >= scaled_path.size())
        throw std::invalid_argument("prescale_path: subdivision path not completed");
      std::int64_t want_pos = from_u_side ? step : len - step;
      int want = want_pos == 0   ? g.edges[e].u
                 : want_pos == len ? g.edges[e].v
                                   : static_cast<int>(sg.sub_offset[e] + want_pos - 1);
      if (scaled_path[i + step] != want)
        throw std::invalid_argument("prescale_path: subdivision path not completed");
    }
    base_nodes.push_back(from_u_side ? g.edges[e].v : g.edges[e].u);
    i += len;
  }
  return make_path(g, std::move(base_nodes));
}

}  // namespace mwc
