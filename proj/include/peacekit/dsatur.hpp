#pragma once

#include <cstdint>
#include <vector>

#include "peacekit/colouring.hpp"
#include "peacekit/graph.hpp"

namespace peacekit {

// DSATUR-style greedy: colours `targets` in saturation order using only
// colours in [0, limit), respecting colours already present in f (colours
// >= limit on neighbours never conflict with band colours).  The first
// attempt breaks ties by lowest index; further attempts randomize ties.
// Returns true on success; on failure f is left untouched.
bool dsatur_extend(const Graph& g, PartialColouring& f, const std::vector<int>& targets,
                   int limit, std::uint64_t seed = 0, int attempts = 5);

}  // namespace peacekit
