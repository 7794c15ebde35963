#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mwc {

// Per-phase accounting of a simulated CONGEST execution.
//
// A message is one O(log n)-bit payload sent over one edge in one direction
// during one round, which is the unit the model charges. Counts are kept per
// (edge, direction); an edge's reported count is the maximum over its two
// directions, matching the per-neighbor send budget of the model.
//
//   congestion(phases) = max over directed edges of the summed counts,
//                        plus the congestion of any model-charged subroutines
//                        in the set (those touch unknown edges, so their
//                        congestion is added conservatively).
//   dilation(phases)   = max single-phase round count.
//
// Oracle-mode subroutines (exact SSSP behind the LDD) do not exchange real
// messages; they enter as model charges with analytic (dilation, congestion).
class CostLedger {
 public:
  // `detailed` keeps per-phase per-edge vectors so congestion of phase
  // subsets can be recomputed; aggregate mode keeps running totals only
  // (subset queries then require the full phase set).
  explicit CostLedger(int num_edges, bool detailed = true);

  int num_edges() const { return num_edges_; }

  // Phases are created open, filled with messages, then closed with a round
  // count. Handles index an internal vector; labels must be unique.
  int begin_phase(std::string label);
  void add_message(int phase, int edge, int direction);
  void add_messages(int phase, int edge, int direction, std::uint64_t count);
  void end_phase(int phase, std::int64_t rounds);

  void add_model_charge(std::string phase, double dilation, double congestion);

  std::size_t phase_count() const { return phases_.size(); }
  std::int64_t phase_rounds(std::string_view label) const;
  std::uint64_t phase_max_edge_messages(std::string_view label) const;

  double congestion_all() const;
  double dilation_all() const;
  double scheduled_cost_all() const;

  // Subset variants; throw on unknown labels, and on message phases when the
  // ledger was built in aggregate mode.
  double congestion(std::span<const std::string> labels) const;
  double dilation(std::span<const std::string> labels) const;
  double scheduled_cost(std::span<const std::string> labels) const;

  // CSV export: phase,rounds,max_edge_messages (model charges included with
  // their analytic numbers).
  std::string to_csv() const;

  // Fold another ledger's accounting into this one (per-trial ledgers are
  // merged in trial order after a parallel run).
  void merge_from(const CostLedger& other);

 private:
  struct Phase {
    std::string label;
    std::int64_t rounds = 0;
    std::uint64_t max_dir_count = 0;
    bool open = true;
    std::vector<std::uint64_t> dir_counts;  // 2*m, detailed mode only
  };
  struct ModelCharge {
    std::string label;
    double dilation = 0;
    double congestion = 0;
  };

  int find_phase(std::string_view label) const;
  int find_charge(std::string_view label) const;

  int num_edges_;
  bool detailed_;
  std::vector<Phase> phases_;
  std::vector<ModelCharge> charges_;
  std::unordered_map<std::string, int> phase_index_;
  std::vector<std::uint64_t> scratch_;  // active-phase counts in aggregate mode
  std::vector<std::uint64_t> totals_;   // 2*m running totals
};

}  // namespace mwc
