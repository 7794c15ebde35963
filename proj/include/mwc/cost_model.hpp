#pragma once

#include <cmath>
#include <stdexcept>

namespace mwc {

// Round-complexity benchmark for exact SSSP with a super source:
// T(n,D) = D + sqrt(n) + n^{2/5} * D^{2/5}.
inline double sssp_complexity(double n, double d) {
  if (n < 1 || d < 0) throw std::invalid_argument("sssp_complexity: bad arguments");
  return d + std::sqrt(n) + std::pow(n, 0.4) * std::pow(d, 0.4);
}

struct SsspCost {
  double dilation = 0;
  double congestion = 0;
};

// Trade-off point: dilation T*q, congestion T/q, for 1 <= q <= T(n,D).
inline SsspCost charge_sssp_cost(double n, double d, double q) {
  double t = sssp_complexity(n, d);
  if (q < 1 || q > t) throw std::invalid_argument("charge_sssp_cost: q out of [1, T(n,D)]");
  return {t * q, t / q};
}

}  // namespace mwc
