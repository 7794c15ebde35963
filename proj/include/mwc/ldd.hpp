#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mwc/graph.hpp"
#include "mwc/ledger.hpp"
#include "mwc/rng.hpp"

namespace mwc {

// Start times and arrivals are carried in fixed point with 40 fractional
// bits. Quantizing the real-valued shifts once up front makes every arrival
// comparison an exact integer comparison, so tie handling and the radius
// invariant are free of floating-point edge cases.
inline constexpr int kShiftFracBits = 40;
inline constexpr std::int64_t kShiftScale = 1ll << kShiftFracBits;

double sample_exponential(double beta, RngStream& rng);

// Monte-Carlo estimate of Pr[Y_(m) - Y_(m-1) >= c] for Y_i = delta_i - d_i
// with delta_i ~ Exponential(beta). Equals e^{-beta c} when all offsets are
// zero; never smaller otherwise.
double max_secondmax_gap_stat(int m, double beta, std::span<const double> offsets, double c,
                              int trials, RngStream& rng);

struct ForestSource {
  int node = 0;
  std::int64_t start_fp = 0;  // nonnegative, fixed point
};

// Disjoint clusters grown from sources by first arrival. Arrival order is the
// strict lexicographic key (time, perturbation sum, center id, edge id,
// predecessor id); parents are the committed predecessors, so every parent
// chain stays in its cluster and tree distances are true center distances.
struct ClusterForest {
  std::vector<int> center;               // per node; -1 unclustered
  std::vector<std::int64_t> dist;        // from center, metric units; kInfDist unclustered
  std::vector<std::int64_t> arrival_fp;  // kInfDist unclustered
  std::vector<int> parent;               // -1 at centers / unclustered
  std::vector<int> parent_edge;
  std::vector<std::vector<int>> children;
  std::vector<std::vector<int>> clusters;  // node lists, by cluster index
  std::vector<int> cluster_center;         // per cluster
  std::vector<int> cluster_of;             // per node; -1

  bool edge_in_forest(int e, const WeightedGraph& g) const {
    return parent_edge[g.edges[e].u] == e || parent_edge[g.edges[e].v] == e;
  }
};

// First-arrival growth of shortest-path trees from `sources`, optionally under
// per-edge integer length overrides (the scaled-graph metric), optionally
// truncated at an arrival cutoff (nodes beyond it stay unclustered).
ClusterForest forest_grow(const WeightedGraph& g, std::span<const ForestSource> sources,
                          std::span<const std::uint64_t> edge_keys,
                          const std::vector<std::int64_t>* length_override = nullptr,
                          std::int64_t arrival_cutoff_fp = kInfDist);

// 63-bit lexicographic tie-break keys, one per edge.
std::vector<std::uint64_t> draw_edge_keys(std::size_t m, RngStream& rng);

struct ShiftAssignment {
  std::vector<double> delta;          // per source, Exponential(beta) samples
  std::vector<std::int64_t> delta_fp;
  double beta = 0;
  double cutoff = 0;  // X = 100*k*d
  bool failed = false;
};

// Shifts for the given sources (sampled in the order supplied; callers pass
// sorted node ids so the draw is independent of set representation).
ShiftAssignment sample_shifts(std::size_t num_sources, double k, double d, RngStream& rng);

struct LddResult {
  ClusterForest forest;
  ShiftAssignment shifts;
  std::vector<int> sources;  // sorted
  bool failed = false;
};

// Low-diameter decomposition: sources start their wavefront at X - delta_u and
// every node joins the first arrival. Clustering is computed centrally (the
// weighted SSSP is an oracle-mode black box); pass a ledger to charge the
// model costs. `length_override` switches to the scaled metric. Growth is
// truncated at arrival time X, the dilation bound of the simulation.
LddResult ldd(const WeightedGraph& g, std::vector<int> sources, double k, double d,
              RngStream& rng, const std::vector<std::int64_t>* length_override = nullptr,
              CostLedger* ledger = nullptr, const std::string& phase_label = "ldd",
              double cost_model_q = 1.0, double diameter_hint = -1.0);

// Unique shortest-path tree from s: ties in primary distance are resolved by
// the perturbation keys, then ids.
ClusterForest sssp_tree(const WeightedGraph& g, int s, std::span<const std::uint64_t> edge_keys);

// Forest growing from explicit start times (the virtual super source with
// lexicographic (start, perturbation, id) edge encoding).
ClusterForest mssp_tree(const WeightedGraph& g, std::span<const int> sources,
                        std::span<const double> start_times,
                        std::span<const std::uint64_t> edge_keys);

struct LddPropertyCheck {
  bool property1 = false;
  bool property2 = false;
  double radius_bound = 0;  // (1+eps1)(k+1)d
};

// Definition-style property check against a fixed minimum-weight cycle.
LddPropertyCheck check_ldd_properties(const ClusterForest& forest, const WeightedGraph& g,
                                      const CycleRecord& cstar, std::span<const int> sources,
                                      double k, double d);

}  // namespace mwc
