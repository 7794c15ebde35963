#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace mwc {

// splitmix64 step; used only to derive seeds for independent streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic random stream. All transforms are hand-rolled on top of
// mt19937_64 (whose output sequence is fixed by the standard) so results are
// bit-identical across platforms and library versions; std::*_distribution is
// deliberately not used anywhere.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  // Counter-based derivation: independent per-trial streams from one master seed.
  static RngStream derive(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t s = master_seed ^ (index * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull);
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return RngStream(a ^ (b << 1));
  }

  std::uint64_t u64() { return engine_(); }

  // Uniform in (0, 1]; exactly 2^53 equally likely values. u01() == 1.0 is
  // reachable, matching the inverse-CDF convention where U = 1 maps to 0.
  double u01() { return static_cast<double>((u64() >> 11) + 1) * 0x1.0p-53; }

  // Uniform integer in [lo, hi] via modulo; bias is irrelevant here and the
  // mapping is fixed, which is what reproducibility needs.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(u64() % span);
  }

  // 63-bit key for lexicographic tie-breaking.
  std::uint64_t key63() { return u64() >> 1; }

  bool bernoulli(double p) { return u01() <= p; }

  // Inverse-CDF sample of Exponential(beta): -ln(U)/beta with U in (0,1].
  double exponential(double beta) {
    if (!(beta > 0)) throw std::invalid_argument("exponential: beta must be positive");
    return -std::log(u01()) / beta;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mwc
