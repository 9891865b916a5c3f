#pragma once

#include <cstdint>

#include "avgctrl/graph.hpp"

namespace avgctrl {

/// Emits a random pattern with the requested verdict, re-validated before
/// return. Qualifying patterns plant a spanning core path and hang random
/// cycles and appendices off it; non-qualifying patterns plant a branching
/// core tree (requires n >= 2). Deterministic in the seed.
SparsityPattern generate_pattern(int n, bool qualifying, std::uint64_t seed);

}  // namespace avgctrl
