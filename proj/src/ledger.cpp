#include "mwc/ledger.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mwc {

CostLedger::CostLedger(int num_edges, bool detailed)
    : num_edges_(num_edges), detailed_(detailed) {
  totals_.assign(2 * static_cast<std::size_t>(num_edges), 0);
  if (!detailed_) scratch_.assign(2 * static_cast<std::size_t>(num_edges), 0);
}

int CostLedger::begin_phase(std::string label) {
  if (phase_index_.count(label)) throw std::invalid_argument("ledger: duplicate phase " + label);
  Phase p;
  p.label = label;
  if (detailed_) p.dir_counts.assign(2 * static_cast<std::size_t>(num_edges_), 0);
  int idx = static_cast<int>(phases_.size());
  phase_index_.emplace(std::move(label), idx);
  phases_.push_back(std::move(p));
  return idx;
}

void CostLedger::add_message(int phase, int edge, int direction) {
  add_messages(phase, edge, direction, 1);
}

void CostLedger::add_messages(int phase, int edge, int direction, std::uint64_t count) {
  if (count == 0) return;
  Phase& p = phases_[phase];
  std::size_t slot = 2 * static_cast<std::size_t>(edge) + direction;
  std::uint64_t now;
  if (detailed_) {
    now = (p.dir_counts[slot] += count);
  } else {
    now = (scratch_[slot] += count);
  }
  totals_[slot] += count;
  p.max_dir_count = std::max(p.max_dir_count, now);
}

void CostLedger::end_phase(int phase, std::int64_t rounds) {
  Phase& p = phases_[phase];
  if (!p.open) throw std::logic_error("ledger: phase closed twice");
  p.rounds = rounds;
  p.open = false;
  if (!detailed_) std::fill(scratch_.begin(), scratch_.end(), 0);
}

void CostLedger::add_model_charge(std::string phase, double dilation, double congestion) {
  charges_.push_back({std::move(phase), dilation, congestion});
}

int CostLedger::find_phase(std::string_view label) const {
  auto it = phase_index_.find(std::string(label));
  return it == phase_index_.end() ? -1 : it->second;
}

int CostLedger::find_charge(std::string_view label) const {
  for (std::size_t i = 0; i < charges_.size(); ++i)
    if (charges_[i].label == label) return static_cast<int>(i);
  return -1;
}

std::int64_t CostLedger::phase_rounds(std::string_view label) const {
  int i = find_phase(label);
  if (i < 0) throw std::invalid_argument("ledger: unknown phase label");
  return phases_[i].rounds;
}

std::uint64_t CostLedger::phase_max_edge_messages(std::string_view label) const {
  int i = find_phase(label);
  if (i < 0) throw std::invalid_argument("ledger: unknown phase label");
  return phases_[i].max_dir_count;
}

double CostLedger::congestion_all() const {
  std::uint64_t mx = 0;
  for (std::uint64_t c : totals_) mx = std::max(mx, c);
  double total = static_cast<double>(mx);
  for (const ModelCharge& c : charges_) total += c.congestion;
  return total;
}

double CostLedger::dilation_all() const {
  double mx = 0;
  for (const Phase& p : phases_) mx = std::max(mx, static_cast<double>(p.rounds));
  for (const ModelCharge& c : charges_) mx = std::max(mx, c.dilation);
  return mx;
}

double CostLedger::scheduled_cost_all() const { return dilation_all() + congestion_all(); }

double CostLedger::congestion(std::span<const std::string> labels) const {
  std::vector<std::uint64_t> sum(2 * static_cast<std::size_t>(num_edges_), 0);
  double charge_total = 0;
  for (const std::string& label : labels) {
    int i = find_phase(label);
    if (i >= 0) {
      if (!detailed_)
        throw std::logic_error("ledger: subset congestion needs detailed mode");
      for (std::size_t s = 0; s < sum.size(); ++s) sum[s] += phases_[i].dir_counts[s];
      continue;
    }
    int c = find_charge(label);
    if (c < 0) throw std::invalid_argument("ledger: unknown phase label " + label);
    charge_total += charges_[c].congestion;
  }
  std::uint64_t mx = 0;
  for (std::uint64_t c : sum) mx = std::max(mx, c);
  return static_cast<double>(mx) + charge_total;
}

double CostLedger::dilation(std::span<const std::string> labels) const {
  double mx = 0;
  for (const std::string& label : labels) {
    int i = find_phase(label);
    if (i >= 0) {
      mx = std::max(mx, static_cast<double>(phases_[i].rounds));
      continue;
    }
    int c = find_charge(label);
    if (c < 0) throw std::invalid_argument("ledger: unknown phase label " + label);
    mx = std::max(mx, charges_[c].dilation);
  }
  return mx;
}

double CostLedger::scheduled_cost(std::span<const std::string> labels) const {
  return dilation(labels) + congestion(labels);
}

void CostLedger::merge_from(const CostLedger& other) {
  if (other.num_edges_ != num_edges_) throw std::invalid_argument("ledger: merge size mismatch");
  for (std::size_t s = 0; s < totals_.size(); ++s) totals_[s] += other.totals_[s];
  for (const Phase& p : other.phases_) {
    if (phase_index_.count(p.label))
      throw std::invalid_argument("ledger: merge duplicate phase " + p.label);
    phase_index_.emplace(p.label, static_cast<int>(phases_.size()));
    if (!detailed_ && !p.dir_counts.empty()) {
      Phase copy = p;
      copy.dir_counts.clear();
      phases_.push_back(std::move(copy));
    } else {
      phases_.push_back(p);
    }
  }
  charges_.insert(charges_.end(), other.charges_.begin(), other.charges_.end());
}

std::string CostLedger::to_csv() const {
  std::ostringstream out;
  out << "phase,rounds,max_edge_messages\n";
  for (const Phase& p : phases_)
    out << p.label << ',' << p.rounds << ',' << p.max_dir_count << '\n';
  for (const ModelCharge& c : charges_)
    out << c.label << ',' << c.dilation << ',' << c.congestion << '\n';
  return out.str();
}

}  // namespace mwc
