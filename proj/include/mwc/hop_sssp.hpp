#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mwc/bfs.hpp"
#include "mwc/graph.hpp"
#include "mwc/ledger.hpp"
#include "mwc/rng.hpp"

namespace mwc {

// d-tilde values are exact rationals with denominator 2^40 (the scaled hop
// count times the quantized scaling factor); they are stored by numerator so
// soundness comparisons against integer weights stay exact.
struct HopDistanceTable {
  std::vector<int> sources;
  int n = 0;
  std::vector<std::int64_t> dtilde_fp;   // per (source idx, node); kInfDist if none
  std::vector<std::int8_t> record;       // B(s,u); kRecordUnknown iff dtilde infinite
  std::vector<std::int32_t> best_iter;   // l*; -1 if none

  std::size_t at(int si, int u) const { return static_cast<std::size_t>(si) * n + u; }
  bool finite(int si, int u) const { return dtilde_fp[at(si, u)] != kInfDist; }
  double dtilde(int si, int u) const;
};

struct HopSsspParams {
  int r = 0;
  std::int64_t r_prime = 0;
  double eps = 0;
  double lambda = 0;  // = sigma = eps/2
  int iterations = 0;  // L + 1
  std::vector<double> d_grid;
  std::vector<std::int64_t> gamma_num;  // per iteration, denominator 2^40
};

// Hop-bounded approximate SSSP via scaling iterations. Each iteration l runs,
// for every source, a BFS over the scaled graph with factor Gamma_l; the BFS
// is simulated on the base graph as a truncated shortest-path computation
// under the integer lengths ceil(w/Gamma_l), which exchanges the same
// messages over the physical edges. Tree ties are resolved by the
// lexicographic edge keys, so the committed estimation paths are unique and
// reproducible.
class HopSsspEngine {
 public:
  HopSsspEngine(const WeightedGraph& g, std::vector<int> sources, int r, double eps,
                std::span<const std::uint64_t> edge_keys, CostLedger* ledger = nullptr,
                const std::string& phase_label = "hop-sssp");

  const HopSsspParams& params() const { return params_; }
  const std::vector<int>& sources() const { return sources_; }

  // Plain table (records unknown) or boolean-record table against an edge
  // subset; d-tilde picks the minimizing iteration, smallest l on ties.
  HopDistanceTable query() const;
  HopDistanceTable query(const std::vector<char>& edge_in_subset) const;

  // Base-graph estimation path behind a finite d-tilde entry.
  PathRecord estimation_path(int si, int u) const;

  // Edge ids of the committed tree path of iteration l from sources_[si] to u
  // (empty when u is the source; u must be reached in that run).
  std::vector<int> tree_path_edges(int l, int si, int u) const;

  // (best fp value, iteration) for one cell without building a full table.
  std::pair<std::int64_t, int> best_estimate(int si, int u) const;

 private:
  const WeightedGraph* g_;
  std::vector<int> sources_;
  HopSsspParams params_;
  // per (iteration, source): scaled distances (-1 unreached) and parent edges
  std::vector<std::vector<std::int32_t>> dist_;
  std::vector<std::vector<std::int32_t>> pedge_;

  std::size_t run_index(int l, int si) const {
    return static_cast<std::size_t>(l) * sources_.size() + si;
  }
  HopDistanceTable build_table(const std::vector<char>* subset) const;
};

// One-shot wrappers drawing fresh tie-break keys from `rng`.
HopDistanceTable bfs_based_sssp(const WeightedGraph& g, std::vector<int> sources, int r,
                                double eps, RngStream& rng, CostLedger* ledger = nullptr,
                                const std::string& phase_label = "bfs-based-sssp");

HopDistanceTable modified_bfs_based_sssp(const WeightedGraph& g, std::vector<int> sources, int r,
                                         double eps, const std::vector<char>& edge_in_subset,
                                         RngStream& rng, CostLedger* ledger = nullptr,
                                         const std::string& phase_label = "modified-bfs-sssp");

}  // namespace mwc
