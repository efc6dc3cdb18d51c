#pragma once

#include <cstdint>

#include "peacekit/colouring.hpp"
#include "peacekit/graph.hpp"

namespace peacekit {

// One-shot colourer: uniform random colouring, symmetric conflict
// uncolouring, Moser-Tardos style neighbourhood resampling of the per-vertex
// bad events, then greedy completion at p = mu * Delta.
struct OneShotParams {
    double mu = 0.5;                 // target peacefulness fraction, in (0, 1]
    std::uint64_t seed = 0;
    long long max_resample_rounds = -1;  // default 50 * n when negative
};

struct OneShotStats {
    long long rounds_used = 0;
    int residual_bad_events = 0;
    bool best_effort = false;  // rounds exhausted with bad events remaining
    int palette_size = 0;
    int measured_peacefulness = 0;
};

struct OneShotResult {
    PartialColouring colouring;  // total
    OneShotStats stats;
};

// palette = floor(5 * Delta / mu); requires Delta >= 2 and mu in (0, 1].
OneShotResult oneshot_colour(const Graph& g, const OneShotParams& params);

// The per-vertex bad event: U_v < deg(v) - mu*Delta + |N(v) - dom(f)|.
// Exposed for tests, which cross-check it against peace_report.
bool oneshot_bad_event(const Graph& g, const PartialColouring& f, int v, double mu_delta);

}  // namespace peacekit
