#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mwc/graph.hpp"
#include "mwc/rational.hpp"

namespace mwc {

// Unweighted subdivision of a weighted graph: each base edge e becomes an
// internally node-disjoint path of ceil(w(e)/gamma) unit edges. Original node
// ids are preserved; subdivision node ids are allocated contiguously above
// them, grouped per base edge, which makes the reverse mapping O(1).
struct ScaledGraph {
  Rational gamma;
  int base_n = 0;
  std::vector<std::int64_t> edge_len;    // per base edge: ceil(w/gamma) >= 1
  std::vector<std::int64_t> sub_offset;  // per base edge: first interior node id
  WeightedGraph unit_graph;              // the subdivision, all weights 1

  bool is_original(int node) const { return node < base_n; }
  // (base edge id, position 1..len-1 counted from edge.u) for interior nodes.
  std::pair<int, int> locate(int node) const;
  // Interior node of edge e at position pos (1..len-1); pos 0 / len are u / v.
  int path_node(int e, std::int64_t pos) const;
};

// Per-edge subdivision lengths without materializing the scaled graph.
std::vector<std::int64_t> subdivision_lengths(const WeightedGraph& g, const Rational& gamma);

ScaledGraph graph_scaling(const WeightedGraph& g, const Rational& gamma);

// |P_{G'}(P)| = sum of ceil(w(e)/gamma) over the edges of a base path.
std::int64_t lift_path(const ScaledGraph& sg, const WeightedGraph& g, const PathRecord& base_path);

// Inverse of lifting: a scaled node sequence that starts and ends at original
// nodes and traverses each subdivision path fully maps back to its unique
// base path. Throws if the sequence enters a subdivision path without
// completing it.
PathRecord prescale_path(const ScaledGraph& sg, const WeightedGraph& g,
                         const std::vector<int>& scaled_path);

}  // namespace mwc
