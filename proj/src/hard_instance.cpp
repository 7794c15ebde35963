#include "mwc/hard_instance.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mwc {

std::int64_t HardInstance::dp() const {
  std::int64_t v = 1;
  for (int i = 0; i < p; ++i) v *= d;
  return v;
}

std::int64_t HardInstance::inner_product() const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<std::int64_t>(x[i]) * y[i];
  return s;
}

std::int64_t HardInstance::expected_nodes() const {
  std::int64_t dpw = dp();
  return 2ll * gamma * dpw + (dpw * d - 1) / (d - 1);
}

WeightedGraph gen_high_girth_bipartite(int gamma, int k, RngStream& rng) {
  if (gamma < 1 || k < 1) throw std::invalid_argument("gen_high_girth_bipartite: bad parameters");
  std::vector<Edge> edges;
  if (k == 1) {
    for (int a = 0; a < gamma; ++a)
      for (int b = 0; b < gamma; ++b) edges.push_back({a, gamma + b, 1});
  } else {
    // Greedy insertion: an edge joins only if every current left-right
    // distance keeps the new cycle longer than 2k.
    std::vector<std::pair<int, int>> candidates;
    for (int a = 0; a < gamma; ++a)
      for (int b = 0; b < gamma; ++b) candidates.emplace_back(a, gamma + b);
    // Fisher-Yates with the stream's raw draws.
    for (std::size_t i = candidates.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(candidates[i - 1], candidates[j]);
    }
    std::vector<std::vector<int>> adj(2 * gamma);
    std::vector<int> dist(2 * gamma);
    for (auto [a, b] : candidates) {
      // BFS from a; adding (a,b) creates a cycle of len dist(a,b)+1.
      std::fill(dist.begin(), dist.end(), -1);
      std::queue<int> q;
      dist[a] = 0;
      q.push(a);
      while (!q.empty()) {
        int u = q.front();
        q.pop();
        if (dist[u] >= 2 * k) continue;
        for (int v : adj[u])
          if (dist[v] < 0) {
            dist[v] = dist[u] + 1;
            q.push(v);
          }
      }
      if (dist[b] >= 0 && dist[b] + 1 <= 2 * k) continue;
      adj[a].push_back(b);
      adj[b].push_back(a);
      edges.push_back({a, b, 1});
    }
  }
  WeightedGraph h = WeightedGraph::build(2 * gamma, false, std::move(edges));
  auto girth = girth_unweighted(h);
  if (girth && *girth <= 2 * k)
    throw std::logic_error("gen_high_girth_bipartite: girth check failed");
  return h;
}

HardInstance gen_lower_bound_graph(int gamma, int k, int d, int p, const WeightedGraph& h,
                                   std::span<const std::uint8_t> x,
                                   std::span<const std::uint8_t> y, HardVariant variant) {
  if (d < 2) throw std::invalid_argument("gen_lower_bound_graph: d must be >= 2");
  if (p < 1) throw std::invalid_argument("gen_lower_bound_graph: p must be >= 1");
  if (h.n != 2 * gamma) throw std::invalid_argument("gen_lower_bound_graph: H is not gamma x gamma");

  HardInstance inst;
  inst.variant = variant;
  inst.gamma = gamma;
  inst.k = k;
  inst.d = d;
  inst.p = p;

  // phi_H: lex order over (left, right); H stores left ids 0..gamma-1 and
  // right ids gamma..2gamma-1.
  for (const Edge& e : h.edges) {
    int a = std::min(e.u, e.v), b = std::max(e.u, e.v);
    if (a >= gamma || b < gamma)
      throw std::invalid_argument("gen_lower_bound_graph: H is not bipartite-layered");
    inst.h_edges.emplace_back(a, b - gamma);
  }
  std::sort(inst.h_edges.begin(), inst.h_edges.end());
  if (x.size() != inst.h_edges.size() || y.size() != inst.h_edges.size())
    throw std::invalid_argument("gen_lower_bound_graph: bit string length mismatch");
  inst.x.assign(x.begin(), x.end());
  inst.y.assign(y.begin(), y.end());

  const std::int64_t dpw = inst.dp();
  bool directed = variant == HardVariant::kDirectedUnweighted;

  // Node ids: P paths, Q paths, then tree level by level.
  int next = 0;
  inst.path_p.assign(gamma, {});
  inst.path_q.assign(gamma, {});
  for (int i = 0; i < gamma; ++i)
    for (std::int64_t j = 0; j < dpw; ++j) inst.path_p[i].push_back(next++);
  for (int i = 0; i < gamma; ++i)
    for (std::int64_t j = 0; j < dpw; ++j) inst.path_q[i].push_back(next++);
  inst.tree.assign(p + 1, {});
  std::int64_t level_size = 1;
  for (int lvl = 0; lvl <= p; ++lvl) {
    for (std::int64_t i = 0; i < level_size; ++i) inst.tree[lvl].push_back(next++);
    level_size *= d;
  }
  const int n = next;
  inst.alpha_node = inst.tree[p].front();
  inst.beta_node = inst.tree[p].back();
  inst.tree_weight = 4ll * n * n;

  std::vector<Edge> edges;
  const std::int64_t w_unit = 1;
  const std::int64_t w_path = directed ? 1 : 0;
  const std::int64_t w_tree = directed ? 1 : inst.tree_weight;

  // Path edges; directed: P low->high, Q high->low.
  for (int i = 0; i < gamma; ++i) {
    for (std::int64_t j = 0; j + 1 < dpw; ++j) {
      edges.push_back({inst.path_p[i][j], inst.path_p[i][j + 1], w_path});
      edges.push_back({inst.path_q[i][j + 1], inst.path_q[i][j], w_path});
    }
  }
  // Tree edges, parents to children; record the level of each.
  for (int lvl = 1; lvl <= p; ++lvl) {
    for (std::size_t c = 0; c < inst.tree[lvl].size(); ++c) {
      int parent = inst.tree[lvl - 1][c / d];
      inst.tree_edge_ids.push_back(static_cast<int>(edges.size()));
      inst.tree_edge_level.push_back(lvl);
      edges.push_back({parent, inst.tree[lvl][c], w_tree});
    }
  }
  // Leaf-to-path edges: leaf i meets every path at position i.
  for (std::int64_t i = 0; i < dpw; ++i) {
    int leaf = inst.tree[p][i];
    for (int j = 0; j < gamma; ++j) {
      edges.push_back({leaf, inst.path_p[j][i], w_tree});
      edges.push_back({leaf, inst.path_q[j][i], w_tree});
    }
  }
  // Bipartite layers via phi_H, kept or dropped by x and y. Directed: on the
  // left layer w_0 -> v_0, on the right v -> w.
  for (std::size_t i = 0; i < inst.h_edges.size(); ++i) {
    auto [a, b] = inst.h_edges[i];
    if (inst.x[i])
      edges.push_back({inst.path_q[b][0], inst.path_p[a][0], w_unit});
    if (inst.y[i])
      edges.push_back({inst.path_p[a][dpw - 1], inst.path_q[b][dpw - 1], w_unit});
    inst.source_sink_pairs.emplace_back(inst.path_q[b][0], inst.path_p[a][dpw - 1]);
  }

  inst.graph = WeightedGraph::build(n, directed, std::move(edges), /*allow_zero_weight=*/true);
  return inst;
}

GapReport verify_gap(const HardInstance& inst) {
  GapReport rep;
  rep.inner_nonzero = inst.inner_product() != 0;
  rep.mwc = exact_mwc(inst.graph);
  if (inst.variant == HardVariant::kUndirectedWeighted) {
    rep.expected_small = 2;
    rep.gap_threshold = 2ll * (inst.k + 1);
  } else {
    rep.expected_small = 2 * inst.dp() + 2;
    rep.gap_threshold = (inst.k + 1) * (2 * inst.dp() + 2);
  }
  if (rep.inner_nonzero) {
    rep.gap_ok = rep.mwc.has_value() && *rep.mwc == rep.expected_small;
  } else {
    rep.gap_ok = !rep.mwc.has_value() || *rep.mwc >= rep.gap_threshold;
  }
  return rep;
}

MovingCutAssignment moving_cut(const HardInstance& inst) {
  for (std::size_t i = 0; i < inst.x.size(); ++i)
    if (!inst.x[i] || !inst.y[i])
      throw std::invalid_argument("moving_cut: requires the all-ones instance");

  const WeightedGraph& g = inst.graph;
  MovingCutAssignment mc;
  mc.lengths.assign(g.edges.size(), Rational(1));
  std::int64_t eh = inst.num_h_edges();
  // l(e_i) = 1 + |E(H)| / (p d^i) on level-i tree edges.
  std::vector<Rational> level_extra(inst.p + 1, Rational(0));
  std::int64_t di = 1;
  for (int lvl = 1; lvl <= inst.p; ++lvl) {
    di *= inst.d;
    level_extra[lvl] = Rational(eh, static_cast<std::int64_t>(inst.p) * di);
  }
  for (std::size_t t = 0; t < inst.tree_edge_ids.size(); ++t)
    mc.lengths[inst.tree_edge_ids[t]] = Rational(1) + level_extra[inst.tree_edge_level[t]];

  mc.capacity = Rational(0);
  for (const Rational& l : mc.lengths) mc.capacity = mc.capacity + (l - Rational(1));

  mc.int_lengths.resize(mc.lengths.size());
  for (std::size_t i = 0; i < mc.lengths.size(); ++i) {
    const Rational& l = mc.lengths[i];
    mc.int_lengths[i] = (l.num() + l.den() - 1) / l.den();
  }

  // Distances under l: scale by p * d^p to integers.
  std::int64_t scale = static_cast<std::int64_t>(inst.p) * inst.dp();
  std::vector<std::int64_t> int_len(g.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Rational scaled = mc.lengths[i] * Rational(scale);
    if (scaled.den() != 1) throw std::logic_error("moving_cut: scaling did not clear denominators");
    int_len[i] = scaled.num();
  }
  // Undirected view for the distance measurement (the moving cut bounds
  // information flow, which ignores orientation).
  WeightedGraph und = g;
  if (g.directed) {
    std::vector<Edge> es = g.edges;
    und = WeightedGraph::build(g.n, false, std::move(es), true);
  }
  std::int64_t best = kInfDist;
  std::vector<int> sources;
  for (auto [s, t] : inst.source_sink_pairs) sources.push_back(s);
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  for (int s : sources) {
    ShortestPaths sp = dijkstra_lengths(und, s, int_len);
    for (auto [src, t] : inst.source_sink_pairs)
      if (src == s && sp.dist[t] < best) best = sp.dist[t];
  }
  mc.distance = Rational(best, scale);

  mc.pure_path_route = Rational(inst.dp());
  mc.tree_route_cost = Rational(0);
  for (int lvl = 1; lvl <= inst.p; ++lvl)
    mc.tree_route_cost = mc.tree_route_cost + (Rational(1) + level_extra[lvl]) * Rational(2);
  return mc;
}

std::string bits_to_hex(std::span<const std::uint8_t> bits) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  int acc = 0, count = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    acc = (acc << 1) | (bits[i] ? 1 : 0);
    if (++count == 4) {
      out.push_back(digits[acc]);
      acc = 0;
      count = 0;
    }
  }
  if (count > 0) out.push_back(digits[acc << (4 - count)]);
  return out;
}

std::string instance_sidecar_json(const HardInstance& inst) {
  nlohmann::ordered_json j;
  j["variant"] =
      inst.variant == HardVariant::kDirectedUnweighted ? "directed-unweighted" : "undirected-weighted";
  j["gamma"] = inst.gamma;
  j["k"] = inst.k;
  j["d"] = inst.d;
  j["p"] = inst.p;
  j["x_hex"] = bits_to_hex(inst.x);
  j["y_hex"] = bits_to_hex(inst.y);
  j["alpha"] = inst.alpha_node;
  j["beta"] = inst.beta_node;
  j["paths_p"] = inst.path_p;
  j["paths_q"] = inst.path_q;
  j["tree"] = inst.tree;
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (auto [s, t] : inst.source_sink_pairs) pairs.push_back({s, t});
  j["source_sink_pairs"] = pairs;
  return j.dump(2);
}

}  // namespace mwc
