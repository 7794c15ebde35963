#include "mwc/mwc_approx.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <thread>

#include "mwc/cost_model.hpp"
#include "mwc/hop_sssp.hpp"

namespace mwc {

namespace {

double log2n(int n) { return std::log2(static_cast<double>(std::max(2, n))); }
double lnn(int n) { return std::log(static_cast<double>(std::max(2, n))); }

int grid_size(int n, std::int64_t w_max, double lambda) {
  double nw = static_cast<double>(n) * static_cast<double>(std::max<std::int64_t>(1, w_max));
  return std::max(0, static_cast<int>(std::ceil(std::log(nw) / std::log1p(lambda)))) + 1;
}

std::int64_t scaled_length(std::int64_t w, std::int64_t gamma_num) {
  __int128 scaled = static_cast<__int128>(w) << kShiftFracBits;
  return static_cast<std::int64_t>((scaled + gamma_num - 1) / gamma_num);
}

void take_if_better(MwcEstimate& best, const MwcEstimate& cand) {
  if (cand.w_tilde_fp < best.w_tilde_fp) best = cand;
}

}  // namespace

MwcEstimate run_shorthop_trial(const WeightedGraph& g, double k, double alpha, double eps,
                               RngStream& rng, CostLedger* ledger, int trial_idx, int diameter) {
  (void)eps;  // enters only through the caller's choice of k; the grid constants are fixed
  MwcEstimate best;
  best.regime = MwcEstimate::kShortHop;
  best.trial = trial_idx;
  int n = g.n;
  if (n < 2 || g.edges.empty()) return best;
  if (diameter < 0) diameter = unweighted_diameter(g);

  const double lambda = 1.0 / (5.0 * log2n(n));
  const double sigma = lambda;
  const double h0 = 10.0 * n * lnn(n) / alpha;
  const int iterations = grid_size(n, g.max_weight, lambda);
  const int m = g.m();

  std::string label = "short/t" + std::to_string(trial_idx);
  int phase = ledger ? ledger->begin_phase(label) : -1;
  std::int64_t rounds = 0;

  std::vector<std::int64_t> lens(m);
  std::vector<ForestSource> sources(n);
  for (int l = 0; l < iterations; ++l) {
    double d = 0.5 * std::pow(1.0 + lambda, l);
    double gamma = sigma * 2.0 * d / h0;
    std::int64_t num = std::max<std::int64_t>(1, std::llround(gamma * kShiftScale));
    for (int e = 0; e < m; ++e) lens[e] = scaled_length(g.edges[e].w, num);
    // Radius parameter in the scaled metric, against the realized Gamma.
    double d_prime = (1.0 + sigma) * d * static_cast<double>(kShiftScale) / num;

    ShiftAssignment shifts = sample_shifts(n, k, d_prime, rng);
    std::vector<std::uint64_t> keys = draw_edge_keys(m, rng);
    if (shifts.failed) {
      best.method = -1;  // marks that some iteration failed; driver counts trials
      continue;
    }
    std::int64_t x_fp = std::llround(shifts.cutoff * kShiftScale);
    for (int v = 0; v < n; ++v) sources[v] = {v, x_fp - shifts.delta_fp[v]};
    ClusterForest forest = forest_grow(g, sources, keys, &lens, x_fp);

    for (int e = 0; e < m; ++e) {
      const Edge& ed = g.edges[e];
      int c = forest.center[ed.u];
      if (c < 0 || forest.center[ed.v] != c) continue;
      if (forest.parent_edge[ed.u] == e || forest.parent_edge[ed.v] == e) continue;
      __int128 est = static_cast<__int128>(forest.dist[ed.u] + forest.dist[ed.v]) * num +
                     (static_cast<__int128>(ed.w) << kShiftFracBits);
      if (est < best.w_tilde_fp) {
        best.w_tilde_fp = static_cast<std::int64_t>(est);
        best.iteration = l;
        best.d = d;
        best.center = c;
        best.edge = e;
      }
    }

    if (ledger) {
      // The BFS wave and the step-1c neighbor exchange: a clustered node sends
      // once per incident direction in each.
      for (int e = 0; e < m; ++e) {
        const Edge& ed = g.edges[e];
        if (forest.center[ed.u] >= 0) ledger->add_messages(phase, e, 0, 2);
        if (forest.center[ed.v] >= 0) ledger->add_messages(phase, e, 1, 2);
      }
    }
    rounds += static_cast<std::int64_t>(std::ceil(shifts.cutoff)) + 1;
  }
  if (ledger) {
    // Final O(D) min-aggregation.
    for (int e = 0; e < m; ++e) {
      ledger->add_messages(phase, e, 0, 1);
      ledger->add_messages(phase, e, 1, 1);
    }
    ledger->end_phase(phase, rounds + diameter);
  }
  return best;
}

MwcEstimate run_longhop_trial(const WeightedGraph& g, const std::vector<int>& skeleton, double k,
                              double alpha, double eps, RngStream& rng, CostLedger* ledger,
                              int trial_idx, int diameter, std::int64_t* failed_iterations,
                              double cost_model_q) {
  MwcEstimate best;
  best.regime = MwcEstimate::kLongHop;
  best.trial = trial_idx;
  int n = g.n;
  if (skeleton.empty() || g.edges.empty()) return best;
  if (diameter < 0) diameter = unweighted_diameter(g);
  (void)eps;

  std::vector<int> s_sorted = skeleton;
  std::sort(s_sorted.begin(), s_sorted.end());
  const int num_s = static_cast<int>(s_sorted.size());
  const int m = g.m();
  const double lambda = 1.0 / (4.0 * log2n(n));
  const double sigma = lambda;
  const double h0 = 10.0 * n * lnn(n) / alpha;
  const int r = std::max(1, static_cast<int>(std::ceil(2.0 * h0)));
  const int iterations = grid_size(n, g.max_weight, lambda);
  std::string label = "long/t" + std::to_string(trial_idx);

  // Method-2 machinery: the per-iteration BFS trees and the minimizing
  // estimates do not depend on the forest, so they are prepared once per
  // trial and only the boolean records are recomputed per decomposition.
  std::vector<std::uint64_t> m2_keys = draw_edge_keys(m, rng);
  HopSsspEngine engine(g, s_sorted, r, sigma, m2_keys, ledger, label + "/m2");

  struct PairData {
    std::int64_t dtilde_fp;
    std::vector<int> path_edges;
  };
  std::vector<PairData> pairs(static_cast<std::size_t>(num_s) * num_s);
  for (int si = 0; si < num_s; ++si) {
    for (int sj = 0; sj < num_s; ++sj) {
      PairData& pd = pairs[static_cast<std::size_t>(si) * num_s + sj];
      if (si == sj) {
        pd.dtilde_fp = kInfDist;
        continue;
      }
      auto [fp, l] = engine.best_estimate(si, s_sorted[sj]);
      pd.dtilde_fp = fp;
      if (l >= 0) pd.path_edges = engine.tree_path_edges(l, si, s_sorted[sj]);
    }
  }

  int msg_phase = ledger ? ledger->begin_phase(label + "/msg") : -1;
  std::int64_t rounds = 0;
  if (ledger) {
    // Step 1: skeleton ids broadcast to all nodes.
    for (int e = 0; e < m; ++e) {
      ledger->add_messages(msg_phase, e, 0, num_s);
      ledger->add_messages(msg_phase, e, 1, num_s);
    }
    rounds += diameter + num_s;
  }

  std::vector<char> in_forest(m);
  for (int l = 0; l < iterations; ++l) {
    double d = 0.5 * std::pow(1.0 + lambda, l);
    LddResult ld = ldd(g, s_sorted, k, d, rng, nullptr, ledger,
                       label + "/l" + std::to_string(l), cost_model_q, diameter);
    if (ld.failed) {
      if (failed_iterations) ++*failed_iterations;
      best.method = best.method == 0 ? -1 : best.method;
      continue;
    }
    const ClusterForest& forest = ld.forest;

    // Method 1: in-cluster non-tree edge.
    for (int e = 0; e < m; ++e) {
      const Edge& ed = g.edges[e];
      int c = forest.center[ed.u];
      if (c < 0 || forest.center[ed.v] != c) continue;
      if (forest.parent_edge[ed.u] == e || forest.parent_edge[ed.v] == e) continue;
      __int128 est = static_cast<__int128>(forest.dist[ed.u] + forest.dist[ed.v] + ed.w)
                     << kShiftFracBits;
      if (est < best.w_tilde_fp) {
        best.w_tilde_fp = static_cast<std::int64_t>(est);
        best.method = 1;
        best.iteration = l;
        best.d = d;
        best.center = c;
        best.edge = e;
        best.skel_u = best.skel_v = -1;
      }
    }

    // Method 2: skeleton pairs whose estimation path leaves the forest.
    for (int e = 0; e < m; ++e) in_forest[e] = forest.edge_in_forest(e, g) ? 1 : 0;
    for (int si = 0; si < num_s; ++si) {
      int u = s_sorted[si];
      int c = forest.center[u];
      if (c < 0) continue;
      for (int sj = 0; sj < num_s; ++sj) {
        if (sj == si) continue;
        int v = s_sorted[sj];
        if (forest.center[v] != c) continue;
        const PairData& pd = pairs[static_cast<std::size_t>(si) * num_s + sj];
        if (pd.dtilde_fp == kInfDist) continue;
        bool aligned = true;
        for (int e : pd.path_edges)
          if (!in_forest[e]) {
            aligned = false;
            break;
          }
        if (aligned) continue;  // record true: tree-path estimate, no cycle witness
        __int128 est = (static_cast<__int128>(forest.dist[u] + forest.dist[v])
                        << kShiftFracBits) +
                       pd.dtilde_fp;
        if (est < best.w_tilde_fp) {
          best.w_tilde_fp = static_cast<std::int64_t>(est);
          best.method = 2;
          best.iteration = l;
          best.d = d;
          best.center = c;
          best.edge = -1;
          best.skel_u = u;
          best.skel_v = v;
        }
      }
    }

    if (ledger) {
      // Method-1 neighbor exchange plus the skeleton broadcast of step 2a.
      for (int e = 0; e < m; ++e) {
        const Edge& ed = g.edges[e];
        ledger->add_messages(msg_phase, e, 0, (forest.center[ed.u] >= 0 ? 1 : 0) + num_s);
        ledger->add_messages(msg_phase, e, 1, (forest.center[ed.v] >= 0 ? 1 : 0) + num_s);
      }
      rounds += 1 + diameter + num_s;
    }
  }
  if (ledger) {
    for (int e = 0; e < m; ++e) {
      ledger->add_messages(msg_phase, e, 0, 1);
      ledger->add_messages(msg_phase, e, 1, 1);
    }
    ledger->end_phase(msg_phase, rounds + diameter);
  }
  return best;
}

std::vector<int> sample_skeleton(const WeightedGraph& g, double alpha, RngStream& rng) {
  double p = std::min(1.0, alpha * lnn(g.n) / std::max(1, g.n));
  std::vector<int> s;
  for (int v = 0; v < g.n; ++v)
    if (rng.bernoulli(p)) s.push_back(v);
  return s;
}

MwcEstimate algo_shorthop(const WeightedGraph& g, double k, double alpha, double eps,
                          RngStream& rng, CostLedger* ledger) {
  return run_shorthop_trial(g, k, alpha, eps, rng, ledger);
}

MwcEstimate algo_longhop(const WeightedGraph& g, double k, double alpha, double eps,
                         RngStream& rng, CostLedger* ledger) {
  std::vector<int> skeleton = sample_skeleton(g, alpha, rng);
  return run_longhop_trial(g, skeleton, k, alpha, eps, rng, ledger);
}

ApproxParams resolve_approx_params(const WeightedGraph& g, double k_star,
                                   const ApproxOptions& options) {
  if (k_star < 1) throw std::invalid_argument("approx_mwc: k* must be >= 1");
  ApproxParams p;
  p.n = g.n;
  p.w_max = std::max<std::int64_t>(1, g.max_weight);
  p.eps = options.eps > 0 ? options.eps : 2.0 / log2n(g.n);
  p.k = (1.0 - p.eps) * (k_star - p.eps);
  if (!(p.k > 0))
    throw std::invalid_argument("approx_mwc: k = (1-eps)(k*-eps) is nonpositive at this n");
  double alpha_max = std::max(1.0, g.n / lnn(g.n));
  p.alpha = options.alpha > 0 ? options.alpha : std::pow(g.n, p.k / (2 * p.k + 1));
  if (p.alpha < 1 || p.alpha > alpha_max)
    throw std::invalid_argument("approx_mwc: alpha outside [1, n/ln n]");
  p.h0 = 10.0 * g.n * lnn(g.n) / p.alpha;
  p.lambda_short = p.sigma_short = 1.0 / (5.0 * log2n(g.n));
  p.lambda_long = p.sigma_long = 1.0 / (4.0 * log2n(g.n));
  p.iterations_short = grid_size(g.n, g.max_weight, p.lambda_short);
  p.iterations_long = grid_size(g.n, g.max_weight, p.lambda_long);
  p.r_method2 = std::max(1, static_cast<int>(std::ceil(2.0 * p.h0)));
  p.r_prime_method2 =
      static_cast<std::int64_t>(std::ceil((1.0 + 2.0 / p.sigma_long) * p.r_method2));
  p.skeleton_p = std::min(1.0, p.alpha * lnn(g.n) / std::max(1, g.n));
  p.diameter = unweighted_diameter(g);

  double ts = 40.0 * std::pow(g.n, 1.0 / p.k) * lnn(g.n);
  double tl = 80.0 * std::pow(10.0 * p.alpha, 1.0 / p.k) * std::pow(lnn(g.n), 1.0 + 1.0 / p.k);
  auto to_count = [](double x) {
    return x > 4e18 ? static_cast<std::int64_t>(4e18)
                    : std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(x)));
  };
  p.t_short_formula = to_count(ts);
  p.t_long_formula = to_count(tl);
  p.t_short = options.max_short_trials >= 0 ? std::min(p.t_short_formula, options.max_short_trials)
                                            : p.t_short_formula;
  p.t_long = options.max_long_trials >= 0 ? std::min(p.t_long_formula, options.max_long_trials)
                                          : p.t_long_formula;

  for (int l = 0; l < p.iterations_short; ++l) {
    double d = 0.5 * std::pow(1.0 + p.lambda_short, l);
    p.d_grid_short.push_back(d);
    double gamma = p.sigma_short * 2.0 * d / p.h0;
    p.gamma_num_grid.push_back(std::max<std::int64_t>(1, std::llround(gamma * kShiftScale)));
  }
  return p;
}

ApproxResult approx_mwc(const WeightedGraph& g, double k_star, std::uint64_t master_seed,
                        const ApproxOptions& options) {
  ApproxResult res;
  res.params = resolve_approx_params(g, k_star, options);
  const ApproxParams& p = res.params;
  res.short_trials = g.edges.empty() ? 0 : p.t_short;
  res.long_trials = g.edges.empty() ? 0 : p.t_long;
  std::int64_t total = res.short_trials + res.long_trials;

  double q = options.cost_model_q;
  if (q <= 0) {
    q = std::pow(p.alpha, 1.0 / (2.0 * p.k));
    q = std::min(q, sssp_complexity(g.n, std::max(1, p.diameter)));
    q = std::max(q, 1.0);
  }

  std::vector<MwcEstimate> estimates(total);
  std::vector<std::int64_t> failed(total, 0);
  std::vector<std::unique_ptr<CostLedger>> ledgers(total);

  auto run_one = [&](std::int64_t i) {
    CostLedger* ledger = nullptr;
    if (options.with_ledger) {
      ledgers[i] = std::make_unique<CostLedger>(g.m(), false);
      ledger = ledgers[i].get();
    }
    if (i < res.short_trials) {
      RngStream rng = RngStream::derive(master_seed, static_cast<std::uint64_t>(i));
      estimates[i] = run_shorthop_trial(g, p.k, p.alpha, p.eps, rng, ledger,
                                        static_cast<int>(i), p.diameter);
      if (estimates[i].method == -1) failed[i] = 1;
    } else {
      std::int64_t j = i - res.short_trials;
      RngStream rng =
          RngStream::derive(master_seed, (1ull << 32) + static_cast<std::uint64_t>(j));
      std::vector<int> skeleton = sample_skeleton(g, p.alpha, rng);
      std::int64_t failed_iters = 0;
      estimates[i] = run_longhop_trial(g, skeleton, p.k, p.alpha, p.eps, rng, ledger,
                                       static_cast<int>(i), p.diameter, &failed_iters, q);
      if (failed_iters > 0 || estimates[i].method == -1) failed[i] = 1;
    }
    if (estimates[i].method == -1) estimates[i].method = 0;
  };

  int threads = std::max(1, options.threads);
  if (threads <= 1 || total <= 1) {
    for (std::int64_t i = 0; i < total; ++i) run_one(i);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (;;) {
          std::int64_t i = next.fetch_add(1);
          if (i >= total) return;
          run_one(i);
        }
      });
    for (auto& th : pool) th.join();
  }

  for (std::int64_t i = 0; i < total; ++i) {
    take_if_better(res.best, estimates[i]);
    res.failed_trials += failed[i];
  }
  if (options.with_ledger && total > 0) {
    CostLedger merged(g.m(), false);
    for (std::int64_t i = 0; i < total; ++i) merged.merge_from(*ledgers[i]);
    res.measured_dilation = merged.dilation_all();
    res.measured_congestion = merged.congestion_all();
    res.scheduled_cost = merged.scheduled_cost_all();
  }
  return res;
}

std::vector<SegmentType> classify_segments(const WeightedGraph& g, const CycleRecord& cstar,
                                           std::span<const int> skeleton,
                                           const ClusterForest& forest) {
  int h = cstar.hops;
  if (h < 3 || cstar.nodes.front() != cstar.nodes.back())
    throw std::invalid_argument("classify_segments: not a closed cycle");
  std::vector<char> is_skel(g.n, 0);
  for (int s : skeleton) is_skel[s] = 1;
  std::vector<int> pos;
  for (int i = 0; i < h; ++i)
    if (is_skel[cstar.nodes[i]]) pos.push_back(i);
  if (pos.empty()) throw std::invalid_argument("classify_segments: no skeleton node on cycle");
  int c = forest.center[cstar.nodes[pos[0]]];

  std::vector<SegmentType> types;
  int segments = static_cast<int>(pos.size());
  for (int si = 0; si < segments; ++si) {
    int from = pos[si];
    int to = si + 1 < segments ? pos[si + 1] : pos[0] + h;
    bool all_tree = true;
    bool nodes_in_cluster = true;
    for (int j = from; j <= to; ++j) {
      int node = cstar.nodes[j % h];
      if (forest.center[node] != c) nodes_in_cluster = false;
    }
    for (int j = from; j < to; ++j) {
      int a = cstar.nodes[j % h];
      int b = cstar.nodes[(j + 1) % h];
      int e = g.edge_between(a, b);
      if (e < 0) throw std::invalid_argument("classify_segments: cycle edge missing");
      bool tree_of_c =
          forest.edge_in_forest(e, g) && forest.center[a] == c && forest.center[b] == c;
      if (!tree_of_c) all_tree = false;
    }
    if (all_tree) {
      types.push_back(SegmentType::kAllTree);
    } else if (nodes_in_cluster) {
      types.push_back(SegmentType::kInClusterNonTree);
    } else {
      types.push_back(SegmentType::kOther);
    }
  }
  return types;
}

}  // namespace mwc
