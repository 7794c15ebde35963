#pragma once

#include <cstdint>

#include "mwc/graph.hpp"
#include "mwc/rng.hpp"

namespace mwc {

// Uniform simple undirected graph on n nodes with m edges and uniform integer
// weights in [1, W]. Byte-identical output per seed.
WeightedGraph gen_random_graph(int n, std::int64_t m, std::int64_t w_max, std::uint64_t seed);

}  // namespace mwc
