#include "mwc/hop_sssp.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "mwc/ldd.hpp"

namespace mwc {

double HopDistanceTable::dtilde(int si, int u) const {
  std::int64_t fp = dtilde_fp[at(si, u)];
  if (fp == kInfDist) return std::numeric_limits<double>::infinity();
  return static_cast<double>(fp) * 0x1.0p-40;
}

namespace {

struct Item {
  std::int64_t d;
  unsigned __int128 psum;
  int via_edge;
  int pred;
  int node;
};

bool item_less(const Item& a, const Item& b) {
  if (a.d != b.d) return a.d < b.d;
  if (a.psum != b.psum) return a.psum < b.psum;
  if (a.via_edge != b.via_edge) return a.via_edge < b.via_edge;
  return a.pred < b.pred;
}

struct ItemCmp {
  bool operator()(const Item& a, const Item& b) const { return item_less(b, a); }
};

// Single-source shortest paths under integer lengths, truncated at `cutoff`,
// ties resolved by the composite key. Writes scaled distances and parent
// edges (-1 where unreached).
void truncated_sssp(const WeightedGraph& g, int s, std::span<const std::int64_t> lengths,
                    std::int64_t cutoff, std::span<const std::uint64_t> keys,
                    std::vector<std::int32_t>& dist, std::vector<std::int32_t>& pedge) {
  dist.assign(g.n, -1);
  pedge.assign(g.n, -1);
  std::vector<char> settled(g.n, 0);
  std::priority_queue<Item, std::vector<Item>, ItemCmp> pq;
  pq.push({0, 0, -1, -1, s});
  while (!pq.empty()) {
    Item it = pq.top();
    pq.pop();
    if (settled[it.node]) continue;
    settled[it.node] = 1;
    dist[it.node] = static_cast<std::int32_t>(it.d);
    pedge[it.node] = it.via_edge;
    for (auto [v, e] : g.adj[it.node]) {
      if (settled[v]) continue;
      std::int64_t nd = it.d + lengths[e];
      if (nd > cutoff) continue;
      pq.push({nd, it.psum + keys[e], e, it.node, v});
    }
  }
}

}  // namespace

HopSsspEngine::HopSsspEngine(const WeightedGraph& g, std::vector<int> sources, int r, double eps,
                             std::span<const std::uint64_t> edge_keys, CostLedger* ledger,
                             const std::string& phase_label)
    : g_(&g), sources_(std::move(sources)) {
  if (r < 1) throw std::invalid_argument("hop-sssp: r must be >= 1");
  if (!(eps > 0)) throw std::invalid_argument("hop-sssp: eps must be positive");
  if (sources_.empty()) throw std::invalid_argument("hop-sssp: empty source set");
  if (edge_keys.size() != g.edges.size())
    throw std::invalid_argument("hop-sssp: edge key count mismatch");

  params_.r = r;
  params_.eps = eps;
  params_.lambda = eps / 2;
  double sigma = params_.lambda;
  params_.r_prime = static_cast<std::int64_t>(std::ceil((1.0 + 1.0 / sigma) * r));
  if (params_.r_prime >= (1ll << 31))
    throw std::invalid_argument("hop-sssp: r' exceeds the 32-bit distance range");
  double nw = static_cast<double>(g.n) * std::max<std::int64_t>(1, g.max_weight);
  int big_l = std::max(0, static_cast<int>(std::ceil(std::log(nw) / std::log1p(params_.lambda))));
  params_.iterations = big_l + 1;
  if (static_cast<double>(params_.iterations) * sources_.size() * g.n > 6e8)
    throw std::invalid_argument("hop-sssp: table too large");

  dist_.resize(static_cast<std::size_t>(params_.iterations) * sources_.size());
  pedge_.resize(dist_.size());
  std::vector<std::int64_t> lengths(g.edges.size());
  std::vector<std::uint32_t> reach_count(g.n);

  for (int l = 0; l < params_.iterations; ++l) {
    double d = std::pow(1.0 + params_.lambda, l);
    params_.d_grid.push_back(d);
    double gamma = sigma * d / r;
    std::int64_t num = std::max<std::int64_t>(1, std::llround(gamma * kShiftScale));
    params_.gamma_num.push_back(num);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      __int128 scaled = static_cast<__int128>(g.edges[e].w) << kShiftFracBits;
      lengths[e] = static_cast<std::int64_t>((scaled + num - 1) / num);
    }
    std::fill(reach_count.begin(), reach_count.end(), 0);
    for (std::size_t si = 0; si < sources_.size(); ++si) {
      std::size_t idx = run_index(l, static_cast<int>(si));
      truncated_sssp(g, sources_[si], lengths, params_.r_prime, edge_keys, dist_[idx],
                     pedge_[idx]);
      for (int v = 0; v < g.n; ++v)
        if (dist_[idx][v] >= 0) ++reach_count[v];
    }
    if (ledger) {
      // Every reached node sends its (id, flag) message once per incident
      // direction per BFS, so the per-direction count on (u,v) is the number
      // of runs that reached u.
      int phase = ledger->begin_phase(phase_label + "/l" + std::to_string(l));
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const Edge& ed = g.edges[e];
        ledger->add_messages(phase, static_cast<int>(e), 0, reach_count[ed.u]);
        ledger->add_messages(phase, static_cast<int>(e), 1, reach_count[ed.v]);
      }
      ledger->end_phase(phase,
                        static_cast<std::int64_t>(sources_.size()) - 1 + params_.r_prime);
    }
  }
}

HopDistanceTable HopSsspEngine::build_table(const std::vector<char>* subset) const {
  HopDistanceTable t;
  t.sources = sources_;
  t.n = g_->n;
  std::size_t cells = sources_.size() * static_cast<std::size_t>(g_->n);
  t.dtilde_fp.assign(cells, kInfDist);
  t.record.assign(cells, kRecordUnknown);
  t.best_iter.assign(cells, -1);
  for (std::size_t si = 0; si < sources_.size(); ++si) {
    for (int v = 0; v < g_->n; ++v) {
      std::size_t cell = t.at(static_cast<int>(si), v);
      for (int l = 0; l < params_.iterations; ++l) {
        std::int32_t d = dist_[run_index(l, static_cast<int>(si))][v];
        if (d < 0) continue;
        std::int64_t fp = static_cast<std::int64_t>(d) * params_.gamma_num[l];
        if (fp < t.dtilde_fp[cell]) {
          t.dtilde_fp[cell] = fp;
          t.best_iter[cell] = l;
        }
      }
      if (subset && t.best_iter[cell] >= 0) {
        // Walk the committed tree path of the minimizing iteration.
        const auto& pe = pedge_[run_index(t.best_iter[cell], static_cast<int>(si))];
        bool inside = true;
        int cur = v;
        while (pe[cur] >= 0) {
          int e = pe[cur];
          if (!(*subset)[e]) {
            inside = false;
            break;
          }
          cur = g_->other(e, cur);
        }
        t.record[cell] = inside ? kRecordTrue : kRecordFalse;
      }
    }
  }
  return t;
}

HopDistanceTable HopSsspEngine::query() const { return build_table(nullptr); }

HopDistanceTable HopSsspEngine::query(const std::vector<char>& edge_in_subset) const {
  if (edge_in_subset.size() != g_->edges.size())
    throw std::invalid_argument("hop-sssp: subset size mismatch");
  return build_table(&edge_in_subset);
}

std::pair<std::int64_t, int> HopSsspEngine::best_estimate(int si, int u) const {
  std::int64_t best = kInfDist;
  int best_l = -1;
  for (int l = 0; l < params_.iterations; ++l) {
    std::int32_t d = dist_[run_index(l, si)][u];
    if (d < 0) continue;
    std::int64_t fp = static_cast<std::int64_t>(d) * params_.gamma_num[l];
    if (fp < best) {
      best = fp;
      best_l = l;
    }
  }
  return {best, best_l};
}

std::vector<int> HopSsspEngine::tree_path_edges(int l, int si, int u) const {
  const auto& pe = pedge_[run_index(l, si)];
  if (dist_[run_index(l, si)][u] < 0)
    throw std::invalid_argument("tree_path_edges: node unreached in that iteration");
  std::vector<int> out;
  int cur = u;
  while (pe[cur] >= 0) {
    out.push_back(pe[cur]);
    cur = g_->other(pe[cur], cur);
  }
  return out;
}

PathRecord HopSsspEngine::estimation_path(int si, int u) const {
  auto [fp, l] = best_estimate(si, u);
  if (l < 0) throw std::invalid_argument("estimation_path: no finite estimate");
  const auto& pe = pedge_[run_index(l, si)];
  std::vector<int> nodes{u};
  int cur = u;
  while (pe[cur] >= 0) {
    cur = g_->other(pe[cur], cur);
    nodes.push_back(cur);
  }
  std::reverse(nodes.begin(), nodes.end());
  return make_path(*g_, std::move(nodes));
}

HopDistanceTable bfs_based_sssp(const WeightedGraph& g, std::vector<int> sources, int r,
                                double eps, RngStream& rng, CostLedger* ledger,
                                const std::string& phase_label) {
  std::vector<std::uint64_t> keys = draw_edge_keys(g.edges.size(), rng);
  HopSsspEngine engine(g, std::move(sources), r, eps, keys, ledger, phase_label);
  return engine.query();
}

HopDistanceTable modified_bfs_based_sssp(const WeightedGraph& g, std::vector<int> sources, int r,
                                         double eps, const std::vector<char>& edge_in_subset,
                                         RngStream& rng, CostLedger* ledger,
                                         const std::string& phase_label) {
  std::vector<std::uint64_t> keys = draw_edge_keys(g.edges.size(), rng);
  HopSsspEngine engine(g, std::move(sources), r, eps, keys, ledger, phase_label);
  return engine.query(edge_in_subset);
}

}  // namespace mwc
