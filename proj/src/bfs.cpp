#include "mwc/bfs.hpp"

#include <stdexcept>

namespace mwc {

namespace {

// One truncated BFS; `edge_in_subset` enables the boolean records.
void run_bfs(const WeightedGraph& g, int s, int r, const std::vector<char>* edge_in_subset,
             std::vector<int>& dist, std::vector<int>& parent, std::vector<std::int8_t>* record,
             CostLedger* ledger, int phase) {
  if (r < 1) throw std::invalid_argument("hop_bounded_bfs: r must be >= 1");
  if (s < 0 || s >= g.n) throw std::invalid_argument("hop_bounded_bfs: source out of range");
  dist.assign(g.n, -1);
  parent.assign(g.n, -1);
  if (record) record->assign(g.n, kRecordUnknown);

  std::vector<char> flag(g.n, 0);  // record bit carried by the node's tree path
  dist[s] = 0;
  if (record) {
    bool any = false;
    for (auto [v, e] : g.adj[s]) {
      (void)v;
      if ((*edge_in_subset)[e]) { any = true; break; }
    }
    (*record)[s] = any ? kRecordTrue : kRecordFalse;
    flag[s] = 1;  // the path of length 0 lies in any subset; per-edge AND starts fresh below
  }

  std::vector<int> frontier{s};
  std::vector<int> next;
  std::vector<int> best_sender(g.n, -1);
  std::vector<std::int8_t> best_flag(g.n, 0);

  for (int t = 1; t <= r && !frontier.empty(); ++t) {
    next.clear();
    for (int u : frontier) {
      for (auto [v, e] : g.adj[u]) {
        if (ledger) ledger->add_message(phase, e, g.edges[e].u == u ? 0 : 1);
        if (dist[v] >= 0) continue;
        std::int8_t b = 0;
        if (record) {
          bool in_sub = (*edge_in_subset)[e];
          b = (u == s) ? static_cast<std::int8_t>(in_sub)
                       : static_cast<std::int8_t>(flag[u] && in_sub);
        }
        if (best_sender[v] == -1 || u < best_sender[v]) {
          if (best_sender[v] == -1) next.push_back(v);
          best_sender[v] = u;
          best_flag[v] = b;
        }
      }
    }
    for (int v : next) {
      dist[v] = t;
      parent[v] = best_sender[v];
      best_sender[v] = -1;
      if (record) {
        (*record)[v] = best_flag[v] ? kRecordTrue : kRecordFalse;
        flag[v] = best_flag[v];
      }
    }
    frontier.swap(next);
  }
}

}  // namespace

BfsResult hop_bounded_bfs(const WeightedGraph& g, int s, int r, CostLedger* ledger,
                          const std::string& phase_label) {
  BfsResult res;
  int phase = ledger ? ledger->begin_phase(phase_label) : -1;
  run_bfs(g, s, r, nullptr, res.dist, res.parent, nullptr, ledger, phase);
  if (ledger) ledger->end_phase(phase, r);
  return res;
}

std::vector<BfsResult> multi_source_bfs(const WeightedGraph& g, std::span<const int> sources,
                                        int r, CostLedger* ledger,
                                        const std::string& phase_label) {
  if (sources.empty()) throw std::invalid_argument("multi_source_bfs: empty source set");
  int phase = ledger ? ledger->begin_phase(phase_label) : -1;
  std::vector<BfsResult> out(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i)
    run_bfs(g, sources[i], r, nullptr, out[i].dist, out[i].parent, nullptr, ledger, phase);
  if (ledger) ledger->end_phase(phase, static_cast<std::int64_t>(sources.size()) - 1 + r);
  return out;
}

ModifiedBfsResult modified_hop_bounded_bfs(const WeightedGraph& g, int s, int r,
                                           const std::vector<char>& edge_in_subset,
                                           CostLedger* ledger, const std::string& phase_label) {
  if (edge_in_subset.size() != g.edges.size())
    throw std::invalid_argument("modified_hop_bounded_bfs: subset size mismatch");
  ModifiedBfsResult res;
  int phase = ledger ? ledger->begin_phase(phase_label) : -1;
  run_bfs(g, s, r, &edge_in_subset, res.dist, res.parent, &res.record, ledger, phase);
  if (ledger) ledger->end_phase(phase, r);
  return res;
}

}  // namespace mwc
