#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mwc/rational.hpp"

namespace mwc {

// Dedicated +infinity sentinel for integer distances. Never an operand.
inline constexpr std::int64_t kInfDist = std::numeric_limits<std::int64_t>::max();

struct Edge {
  int u = 0;
  int v = 0;
  std::int64_t w = 1;
};

// Weighted graph with 0..n-1 node ids. Undirected graphs store each edge once
// in `edges` and twice in the adjacency. Weights are positive; the relaxed
// builder mode additionally admits weight 0 (lower-bound instances assign
// weight 0 to their path edges).
struct WeightedGraph {
  int n = 0;
  bool directed = false;
  std::vector<Edge> edges;
  std::vector<std::vector<std::pair<int, int>>> adj;  // node -> (neighbor, edge id)
  std::int64_t max_weight = 0;                        // W

  static WeightedGraph build(int n, bool directed, std::vector<Edge> edge_list,
                             bool allow_zero_weight = false);

  int m() const { return static_cast<int>(edges.size()); }
  // Other endpoint of edge `e` as seen from `from`.
  int other(int e, int from) const {
    const Edge& ed = edges[e];
    return ed.u == from ? ed.v : ed.u;
  }
  // Edge id of u-v (u->v when directed), -1 if absent.
  int edge_between(int u, int v) const;
};

struct PathRecord {
  std::vector<int> nodes;
  std::int64_t weight = 0;
  int hops = 0;
};

// Closed node list: nodes.front() == nodes.back().
struct CycleRecord {
  std::vector<int> nodes;
  std::int64_t weight = 0;
  int hops = 0;
};

// Builds a PathRecord from a node list, validating every hop exists.
PathRecord make_path(const WeightedGraph& g, std::vector<int> nodes);

// --- edge-list text format -------------------------------------------------
// First line: "n m directed|undirected", then m lines "u v w".
WeightedGraph load_graph(const std::string& text);
std::string to_edge_list_text(const WeightedGraph& g);

// --- shortest paths ----------------------------------------------------------
struct ShortestPaths {
  std::vector<std::int64_t> dist;   // kInfDist if unreached
  std::vector<int> parent;          // -1 at sources / unreached
  std::vector<int> parent_edge;     // -1 likewise
};

ShortestPaths dijkstra(const WeightedGraph& g, int source);

// Virtual super source: dist(v) = min over seeds (offset + dist_g(seed, v)).
ShortestPaths dijkstra(const WeightedGraph& g,
                       std::span<const std::pair<int, std::int64_t>> seeds);

// Super source with exact rational offsets (reduced to the integer routine via
// a common denominator).
std::vector<Rational> dijkstra_rational(
    const WeightedGraph& g, std::span<const std::pair<int, Rational>> seeds);

// Dijkstra under per-edge length overrides (lengths >= 0).
ShortestPaths dijkstra_lengths(const WeightedGraph& g, int source,
                               std::span<const std::int64_t> lengths);

// --- minimum weight cycle ----------------------------------------------------
// Undirected: min over edges e=(u,v) of dist_{g-e}(u,v) + w(e).
// Directed:   min over edges (u,v) of dist(v,u) + w(u,v).
std::optional<std::int64_t> exact_mwc(const WeightedGraph& g);
std::optional<CycleRecord> exact_mwc_witness(const WeightedGraph& g);

// Exhaustive simple-cycle enumeration; the validation oracle for exact_mwc.
std::optional<std::int64_t> enumerate_cycles_bruteforce(const WeightedGraph& g, int cap = 12);

// Minimum cycle hop count of the unweighted view (undirected graphs).
std::optional<std::int64_t> girth_unweighted(const WeightedGraph& g);

// Hop diameter of the underlying undirected graph: max over reachable pairs.
int unweighted_diameter(const WeightedGraph& g);

}  // namespace mwc
