#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mwc/graph.hpp"
#include "mwc/ledger.hpp"

namespace mwc {

// Hop distances use -1 as the unreached marker (the +infinity of BfsResult).
struct BfsResult {
  std::vector<int> dist;    // d(s,u), -1 unreached
  std::vector<int> parent;  // p(u), -1 at source / unreached
};

enum : std::int8_t { kRecordUnknown = -1, kRecordFalse = 0, kRecordTrue = 1 };

struct ModifiedBfsResult {
  std::vector<int> dist;
  std::vector<int> parent;
  std::vector<std::int8_t> record;  // B(s,u)
};

// Round-synchronous BFS truncated at r rounds. The graph is treated as
// unweighted. Each activated node sends its message to every neighbor in the
// next round; activation picks the smallest-id sender. Metering: one message
// per (edge, direction) per send, r rounds.
BfsResult hop_bounded_bfs(const WeightedGraph& g, int s, int r, CostLedger* ledger = nullptr,
                          const std::string& phase_label = "hop-bounded-bfs");

// |S| truncated BFS runs metered as one phase; outputs are identical to
// independent runs. Recorded rounds follow the scheduling bound: |S| - 1 + r.
std::vector<BfsResult> multi_source_bfs(const WeightedGraph& g, std::span<const int> sources,
                                        int r, CostLedger* ledger = nullptr,
                                        const std::string& phase_label = "multi-source-bfs");

// BFS carrying one boolean per message: the record stays true exactly while
// the tree path so far lies inside `edge_in_subset`. Payload per message is
// (id, flag), one message unit.
ModifiedBfsResult modified_hop_bounded_bfs(const WeightedGraph& g, int s, int r,
                                           const std::vector<char>& edge_in_subset,
                                           CostLedger* ledger = nullptr,
                                           const std::string& phase_label = "modified-bfs");

}  // namespace mwc
