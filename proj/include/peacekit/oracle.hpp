#pragma once

#include <cstdint>
#include <stdexcept>

#include "peacekit/colouring.hpp"
#include "peacekit/graph.hpp"

namespace peacekit {

class OracleCapExceeded : public std::runtime_error {
public:
    explicit OracleCapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

class NotColourableError : public std::runtime_error {
public:
    explicit NotColourableError(const std::string& msg) : std::runtime_error(msg) {}
};

struct OracleOptions {
    std::uint64_t node_cap = 100'000'000;  // backtracking nodes visited
    bool symmetry_breaking = true;         // canonical colour order pruning
};

struct OracleResult {
    int p_star = 0;
    PartialColouring witness;
    std::uint64_t nodes_visited = 0;
};

// Exact minimum peacefulness over all total proper c-colourings, by
// backtracking over a degeneracy order with incremental disturbed counts.
// Throws OracleCapExceeded past the node cap and NotColourableError when no
// proper c-colouring exists.
OracleResult min_peacefulness_exact(const Graph& g, int c, const OracleOptions& opts = {});

// True iff every total proper c-colouring has peacefulness > p.
bool certify_no_peaceful(const Graph& g, int c, double p, const OracleOptions& opts = {});

}  // namespace peacekit
