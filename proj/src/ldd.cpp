#include "mwc/ldd.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "mwc/cost_model.hpp"

namespace mwc {

double sample_exponential(double beta, RngStream& rng) { return rng.exponential(beta); }

double max_secondmax_gap_stat(int m, double beta, std::span<const double> offsets, double c,
                              int trials, RngStream& rng) {
  if (m < 2) throw std::invalid_argument("max_secondmax_gap_stat: m must be >= 2");
  if (!offsets.empty() && static_cast<int>(offsets.size()) != m)
    throw std::invalid_argument("max_secondmax_gap_stat: offset count mismatch");
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    double top = -1e300, second = -1e300;
    for (int i = 0; i < m; ++i) {
      double y = rng.exponential(beta) - (offsets.empty() ? 0.0 : offsets[i]);
      if (y > top) {
        second = top;
        top = y;
      } else if (y > second) {
        second = y;
      }
    }
    if (top - second >= c) ++hits;
  }
  return static_cast<double>(hits) / trials;
}

std::vector<std::uint64_t> draw_edge_keys(std::size_t m, RngStream& rng) {
  std::vector<std::uint64_t> keys(m);
  for (auto& k : keys) k = rng.key63();
  return keys;
}

namespace {

struct QueueItem {
  std::int64_t t;
  unsigned __int128 psum;
  int center;
  int via_edge;
  int pred;
  int node;
};

// Strict total order on arrivals; the final components make it a total order
// even on colliding perturbation sums.
bool key_less(const QueueItem& a, const QueueItem& b) {
  if (a.t != b.t) return a.t < b.t;
  if (a.psum != b.psum) return a.psum < b.psum;
  if (a.center != b.center) return a.center < b.center;
  if (a.via_edge != b.via_edge) return a.via_edge < b.via_edge;
  return a.pred < b.pred;
}

struct QueueCmp {
  bool operator()(const QueueItem& a, const QueueItem& b) const { return key_less(b, a); }
};

}  // namespace

ClusterForest forest_grow(const WeightedGraph& g, std::span<const ForestSource> sources,
                          std::span<const std::uint64_t> edge_keys,
                          const std::vector<std::int64_t>* length_override,
                          std::int64_t arrival_cutoff_fp) {
  if (edge_keys.size() != g.edges.size())
    throw std::invalid_argument("forest_grow: edge key count mismatch");
  ClusterForest f;
  f.center.assign(g.n, -1);
  f.dist.assign(g.n, kInfDist);
  f.arrival_fp.assign(g.n, kInfDist);
  f.parent.assign(g.n, -1);
  f.parent_edge.assign(g.n, -1);
  f.children.assign(g.n, {});
  f.cluster_of.assign(g.n, -1);

  std::priority_queue<QueueItem, std::vector<QueueItem>, QueueCmp> pq;
  for (const ForestSource& s : sources) {
    if (s.node < 0 || s.node >= g.n) throw std::invalid_argument("forest_grow: bad source node");
    if (s.start_fp < 0) throw std::invalid_argument("forest_grow: negative start time");
    if (s.start_fp <= arrival_cutoff_fp)
      pq.push({s.start_fp, 0, s.node, -1, -1, s.node});
  }

  std::vector<char> settled(g.n, 0);
  while (!pq.empty()) {
    QueueItem it = pq.top();
    pq.pop();
    if (settled[it.node]) continue;
    settled[it.node] = 1;
    f.center[it.node] = it.center;
    f.arrival_fp[it.node] = it.t;
    f.parent[it.node] = it.pred;
    f.parent_edge[it.node] = it.via_edge;
    for (auto [v, e] : g.adj[it.node]) {
      if (settled[v]) continue;
      std::int64_t len = length_override ? (*length_override)[e] : g.edges[e].w;
      __int128 nt = static_cast<__int128>(it.t) + static_cast<__int128>(len) * kShiftScale;
      if (nt > arrival_cutoff_fp) continue;
      pq.push({static_cast<std::int64_t>(nt), it.psum + edge_keys[e], it.center, e, it.node, v});
    }
  }

  std::vector<int> cluster_index(g.n, -1);
  for (int v = 0; v < g.n; ++v) {
    int c = f.center[v];
    if (c < 0) continue;
    if (cluster_index[c] < 0) {
      cluster_index[c] = static_cast<int>(f.clusters.size());
      f.clusters.emplace_back();
      f.cluster_center.push_back(c);
    }
    f.cluster_of[v] = cluster_index[c];
    f.clusters[cluster_index[c]].push_back(v);
    if (f.parent[v] >= 0) f.children[f.parent[v]].push_back(v);
  }
  // dist in metric units: arrival minus the center's own start time.
  for (int v = 0; v < g.n; ++v) {
    int c = f.center[v];
    if (c < 0) continue;
    f.dist[v] = (f.arrival_fp[v] - f.arrival_fp[c]) >> kShiftFracBits;
  }
  return f;
}

ShiftAssignment sample_shifts(std::size_t num_sources, double k, double d, RngStream& rng) {
  if (!(k > 0) || !(d > 0)) throw std::invalid_argument("sample_shifts: k, d must be positive");
  ShiftAssignment sa;
  sa.cutoff = 100.0 * k * d;
  if (sa.cutoff * kShiftScale >= 0x1p62)
    throw std::invalid_argument("sample_shifts: cutoff too large for fixed point");
  // A singleton source has no competition; ln|S| = 0 degenerates the rate, so
  // its shift is pinned to zero.
  sa.beta = num_sources >= 2 ? std::log(static_cast<double>(num_sources)) / (k * d) : 0.0;
  sa.delta.resize(num_sources);
  sa.delta_fp.resize(num_sources);
  for (std::size_t i = 0; i < num_sources; ++i) {
    double x = num_sources >= 2 ? rng.exponential(sa.beta) : 0.0;
    sa.delta[i] = x;
    if (x >= sa.cutoff) sa.failed = true;
    sa.delta_fp[i] = static_cast<std::int64_t>(std::llround(x * kShiftScale));
  }
  return sa;
}

LddResult ldd(const WeightedGraph& g, std::vector<int> sources, double k, double d,
              RngStream& rng, const std::vector<std::int64_t>* length_override,
              CostLedger* ledger, const std::string& phase_label, double cost_model_q,
              double diameter_hint) {
  if (sources.empty()) throw std::invalid_argument("ldd: empty source set");
  std::sort(sources.begin(), sources.end());
  LddResult res;
  res.shifts = sample_shifts(sources.size(), k, d, rng);
  // Keys are consumed even on failure so the stream position is predictable.
  std::vector<std::uint64_t> keys = draw_edge_keys(g.edges.size(), rng);
  res.sources = std::move(sources);
  if (res.shifts.failed) {
    res.failed = true;
    return res;
  }
  std::int64_t x_fp = static_cast<std::int64_t>(std::llround(res.shifts.cutoff * kShiftScale));
  std::vector<ForestSource> fs(res.sources.size());
  for (std::size_t i = 0; i < res.sources.size(); ++i)
    fs[i] = {res.sources[i], x_fp - res.shifts.delta_fp[i]};
  res.forest = forest_grow(g, fs, keys, length_override, x_fp);
  if (ledger) {
    // Two SSSP passes (plain + perturbed) behind the tree construction, plus
    // the |S|-message broadcasts.
    double diam = diameter_hint > 0 ? diameter_hint : std::max(1, g.n - 1);
    SsspCost c = charge_sssp_cost(g.n, diam, cost_model_q);
    ledger->add_model_charge(phase_label + "/sssp", 2 * c.dilation, 2 * c.congestion);
    ledger->add_model_charge(phase_label + "/broadcast",
                             diam + static_cast<double>(res.sources.size()),
                             static_cast<double>(res.sources.size()));
  }
  return res;
}

ClusterForest sssp_tree(const WeightedGraph& g, int s, std::span<const std::uint64_t> edge_keys) {
  ForestSource src{s, 0};
  return forest_grow(g, std::span(&src, 1), edge_keys);
}

ClusterForest mssp_tree(const WeightedGraph& g, std::span<const int> sources,
                        std::span<const double> start_times,
                        std::span<const std::uint64_t> edge_keys) {
  if (sources.size() != start_times.size())
    throw std::invalid_argument("mssp_tree: start time count mismatch");
  std::vector<ForestSource> fs(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (start_times[i] < 0) throw std::invalid_argument("mssp_tree: negative start time");
    fs[i] = {sources[i], static_cast<std::int64_t>(std::llround(start_times[i] * kShiftScale))};
  }
  return forest_grow(g, fs, edge_keys);
}

LddPropertyCheck check_ldd_properties(const ClusterForest& forest, const WeightedGraph& g,
                                      const CycleRecord& cstar, std::span<const int> sources,
                                      double k, double d) {
  (void)g;
  LddPropertyCheck out;
  std::size_t s_size = sources.size();
  double eps1 = s_size >= 2 ? (k / (k + 1)) / std::log(static_cast<double>(s_size)) : 0.0;
  out.radius_bound =
      s_size >= 2 ? (1.0 + eps1) * (k + 1) * d : std::numeric_limits<double>::infinity();

  // Property I: every source is clustered within the radius bound.
  out.property1 = true;
  for (int u : sources) {
    if (forest.center[u] < 0 || static_cast<double>(forest.dist[u]) > out.radius_bound) {
      out.property1 = false;
      break;
    }
  }

  // S* = sources on the cycle.
  std::vector<char> is_source(forest.center.size(), 0);
  for (int u : sources) is_source[u] = 1;
  std::vector<int> s_star;
  for (std::size_t i = 0; i + 1 < cstar.nodes.size(); ++i)
    if (is_source[cstar.nodes[i]]) s_star.push_back(cstar.nodes[i]);
  if (s_star.empty())
    throw std::invalid_argument("check_ldd_properties: no source lies on the cycle");

  int c0 = forest.center[s_star.front()];
  bool same = c0 >= 0;
  std::int64_t min_dist = kInfDist;
  for (int u : s_star) {
    if (forest.center[u] != c0 || forest.center[u] < 0) same = false;
    if (forest.center[u] >= 0) min_dist = std::min(min_dist, forest.dist[u]);
  }
  out.property2 =
      same && min_dist != kInfDist && static_cast<double>(min_dist) + d <= out.radius_bound;
  return out;
}

}  // namespace mwc
