#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mwc/graph.hpp"
#include "mwc/rational.hpp"
#include "mwc/rng.hpp"

namespace mwc {

enum class HardVariant { kDirectedUnweighted, kUndirectedWeighted };

// Lower-bound gadget: 2*gamma paths of d^p nodes, a d-ary tree of depth p
// glued to every path position through its leaves, and two bipartite layers
// (a copy of H at position 0 and at position d^p-1) whose edges are kept or
// removed by the bit strings x and y.
struct HardInstance {
  WeightedGraph graph;
  HardVariant variant = HardVariant::kUndirectedWeighted;
  int gamma = 0, k = 0, d = 0, p = 0;
  std::vector<std::pair<int, int>> h_edges;  // phi_H: index -> (left, right), lex order, 0-based
  std::vector<std::uint8_t> x, y;

  // Node roles.
  std::vector<std::vector<int>> path_p;  // v[i][j], i in 0..gamma-1, j in 0..d^p-1
  std::vector<std::vector<int>> path_q;  // w[i][j]
  std::vector<std::vector<int>> tree;    // tree[level][pos], level 0 = root
  int alpha_node = -1, beta_node = -1;   // leftmost / rightmost leaf
  std::vector<std::pair<int, int>> source_sink_pairs;  // S(H), one per H edge

  std::vector<int> tree_edge_ids;
  std::vector<int> tree_edge_level;  // level i in 1..p of each tree edge
  std::int64_t tree_weight = 0;      // 4*n^2 in the weighted variant

  std::int64_t dp() const;  // d^p
  int num_h_edges() const { return static_cast<int>(h_edges.size()); }
  std::int64_t inner_product() const;  // <x, y>
  // Closed forms of the construction.
  std::int64_t expected_nodes() const;
  int expected_diameter() const { return 2 * p + 2; }
};

// Bipartite graph on gamma+gamma nodes (left 0..gamma-1, right gamma..2gamma-1)
// with girth > 2k, verified. k=1 is complete bipartite; k>=2 inserts edges in
// random order, rejecting any that closes a cycle of length <= 2k.
WeightedGraph gen_high_girth_bipartite(int gamma, int k, RngStream& rng);

HardInstance gen_lower_bound_graph(int gamma, int k, int d, int p, const WeightedGraph& h,
                                   std::span<const std::uint8_t> x,
                                   std::span<const std::uint8_t> y, HardVariant variant);

struct GapReport {
  std::optional<std::int64_t> mwc;
  bool inner_nonzero = false;
  std::int64_t expected_small = 0;  // 2 (weighted) or 2 d^p + 2 (directed)
  std::int64_t gap_threshold = 0;   // 2(k+1) or (k+1)(2 d^p + 2)
  bool gap_ok = false;
};

// Exact cycle-weight check of the two-sided gap.
GapReport verify_gap(const HardInstance& inst);

struct MovingCutAssignment {
  std::vector<Rational> lengths;           // per edge
  std::vector<std::int64_t> int_lengths;   // ceil-rounded integer version
  Rational capacity;                       // sum of (l(e) - 1); equals |E(H)|
  Rational distance;                       // min source-sink distance under l
  Rational pure_path_route;                // d^p
  Rational tree_route_cost;                // 2 * sum over all p levels of l(e_i)
};

// The explicit capacity assignment from the disjointness bound: level-i tree
// edges get 1 + |E(H)|/(p d^i), everything else 1. Requires all-ones x, y.
MovingCutAssignment moving_cut(const HardInstance& inst);

// Edge-list text plus a JSON sidecar naming roles and the bit strings in hex.
std::string instance_sidecar_json(const HardInstance& inst);

std::string bits_to_hex(std::span<const std::uint8_t> bits);

}  // namespace mwc
