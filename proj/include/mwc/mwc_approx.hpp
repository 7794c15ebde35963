#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mwc/graph.hpp"
#include "mwc/ldd.hpp"
#include "mwc/ledger.hpp"
#include "mwc/rng.hpp"

namespace mwc {

// One detected cycle estimate. Estimates are exact rationals with denominator
// 2^40 and are never below the true minimum cycle weight.
struct MwcEstimate {
  std::int64_t w_tilde_fp = kInfDist;  // 2^-40 units; kInfDist = nothing detected
  enum Regime : std::int8_t { kNone = 0, kShortHop = 1, kLongHop = 2 } regime = kNone;
  int method = 0;     // long-hop: 1 = in-cluster non-tree edge, 2 = boolean-record pair
  int trial = -1;
  int iteration = -1;
  double d = 0;       // radius guess of the detecting iteration
  int center = -1;
  int edge = -1;          // the detected non-tree edge (short-hop / method 1)
  int skel_u = -1, skel_v = -1;  // the detected skeleton pair (method 2)

  bool finite() const { return w_tilde_fp != kInfDist; }
  double w_tilde() const {
    return finite() ? static_cast<double>(w_tilde_fp) * 0x1.0p-40
                    : std::numeric_limits<double>::infinity();
  }
};

struct ApproxParams {
  int n = 0;
  std::int64_t w_max = 0;
  double eps = 0;
  double k = 0;
  double alpha = 0;
  double h0 = 0;
  double lambda_short = 0, sigma_short = 0;
  double lambda_long = 0, sigma_long = 0;
  int iterations_short = 0, iterations_long = 0;
  int r_method2 = 0;
  std::int64_t r_prime_method2 = 0;
  double skeleton_p = 0;
  std::int64_t t_short_formula = 0, t_long_formula = 0;
  std::int64_t t_short = 0, t_long = 0;
  int diameter = 0;
  std::vector<double> d_grid_short;
  std::vector<std::int64_t> gamma_num_grid;  // denominator 2^40
};

struct ApproxOptions {
  double alpha = -1;                  // <= 0: the balanced default n^{k/(2k+1)}
  double eps = -1;                    // <= 0: 2 / log2(n)
  std::int64_t max_short_trials = -1; // < 0: run the full boosted count
  std::int64_t max_long_trials = -1;
  int threads = 1;
  bool with_ledger = true;
  double cost_model_q = -1;           // <= 0: alpha^{1/(2k)}
};

struct ApproxResult {
  MwcEstimate best;
  ApproxParams params;
  std::int64_t short_trials = 0;
  std::int64_t long_trials = 0;
  std::int64_t failed_trials = 0;  // trials with at least one failed shift draw
  double measured_dilation = 0;
  double measured_congestion = 0;
  double scheduled_cost = 0;

  bool no_cycle() const { return !best.finite(); }
};

// One short-hop trial: scaling iterations, BFS-grown decomposition over the
// scaled graph with every node a source, in-cluster non-tree edge detection.
MwcEstimate run_shorthop_trial(const WeightedGraph& g, double k, double alpha, double eps,
                               RngStream& rng, CostLedger* ledger = nullptr, int trial_idx = 0,
                               int diameter = -1);

// One long-hop trial with a fixed skeleton set (exposed for tests that force
// the skeleton); `algo_longhop` samples the skeleton itself.
MwcEstimate run_longhop_trial(const WeightedGraph& g, const std::vector<int>& skeleton, double k,
                              double alpha, double eps, RngStream& rng,
                              CostLedger* ledger = nullptr, int trial_idx = 0, int diameter = -1,
                              std::int64_t* failed_iterations = nullptr,
                              double cost_model_q = 1.0);

MwcEstimate algo_shorthop(const WeightedGraph& g, double k, double alpha, double eps,
                          RngStream& rng, CostLedger* ledger = nullptr);
MwcEstimate algo_longhop(const WeightedGraph& g, double k, double alpha, double eps,
                         RngStream& rng, CostLedger* ledger = nullptr);

std::vector<int> sample_skeleton(const WeightedGraph& g, double alpha, RngStream& rng);

// Boosted driver: k = (1-eps)(k*-eps), short-hop and long-hop trials, minimum
// estimate across all of them. Trial counts follow the boosting formulas,
// clamped by the options (the formulas are astronomically large outside the
// asymptotic regime; the sandwich guarantee is what the caller checks).
ApproxResult approx_mwc(const WeightedGraph& g, double k_star, std::uint64_t master_seed,
                        const ApproxOptions& options = {});

// Computes the driver's resolved constants without running trials.
ApproxParams resolve_approx_params(const WeightedGraph& g, double k_star,
                                   const ApproxOptions& options);

enum class SegmentType : int { kAllTree = 1, kInClusterNonTree = 2, kOther = 3 };

// Splits a cycle at its skeleton nodes and classifies each segment against
// the cluster containing the on-cycle skeleton nodes.
std::vector<SegmentType> classify_segments(const WeightedGraph& g, const CycleRecord& cstar,
                                           std::span<const int> skeleton,
                                           const ClusterForest& forest);

}  // namespace mwc
