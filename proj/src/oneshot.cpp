#include "peacekit/oneshot.hpp"

#include <algorithm>
#include <cmath>

#include "peacekit/rng.hpp"

namespace peacekit {

namespace {

// f = g minus both endpoints of every monochromatic edge.
PartialColouring uncolour_conflicts(const Graph& g, const PartialColouring& assigned) {
    PartialColouring f = assigned;
    std::vector<char> drop(g.vertex_count(), 0);
    for (int v = 0; v < g.vertex_count(); ++v)
        for (int u : g.neighbours(v))
            if (u > v && assigned.colours[u] == assigned.colours[v]) {
                drop[u] = 1;
                drop[v] = 1;
            }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (drop[v]) f.colours[v] = kUncoloured;
    return f;
}

}  // namespace

bool oneshot_bad_event(const Graph& g, const PartialColouring& f, int v, double mu_delta) {
    // single-neighbourhood scan, same counting as peace_report but local
    std::vector<int> freq(f.palette_size, 0);
    for (int w : g.neighbours(v)) {
        int c = f.colours[w];
        if (c != kUncoloured) ++freq[c];
    }
    int undisturbed = 0, uncoloured = 0;
    for (int w : g.neighbours(v)) {
        int c = f.colours[w];
        if (c == kUncoloured) ++uncoloured;
        else if (freq[c] == 1) ++undisturbed;
    }
    return undisturbed < static_cast<double>(g.degree(v)) - mu_delta + uncoloured;
}

OneShotResult oneshot_colour(const Graph& g, const OneShotParams& params) {
    if (g.max_degree() < 2) throw std::invalid_argument("oneshot_colour: requires Delta >= 2");
    if (!(params.mu > 0.0 && params.mu <= 1.0))
        throw std::invalid_argument("oneshot_colour: mu must be in (0, 1]");
    int n = g.vertex_count();
    int delta = g.max_degree();
    int palette = static_cast<int>(std::floor(5.0 * delta / params.mu));
    if (palette < delta + 1) throw std::logic_error("oneshot palette below Delta+1");
    double mu_delta = params.mu * delta;
    long long budget =
        params.max_resample_rounds >= 0 ? params.max_resample_rounds : 50LL * n;

    Rng rng = Rng::stream(params.seed, 0x05e5ULL);
    PartialColouring assigned(n, palette);
    for (int v = 0; v < n; ++v) assigned.colours[v] = rng.int_below(palette);

    PartialColouring f = uncolour_conflicts(g, assigned);

    OneShotResult result;
    result.stats.palette_size = palette;
    long long rounds = 0;
    while (true) {
        int violator = -1;
        int bad_count = 0;
        for (int v = 0; v < n; ++v)
            if (oneshot_bad_event(g, f, v, mu_delta)) {
                ++bad_count;
                if (violator == -1) violator = v;
            }
        if (bad_count == 0) {
            result.stats.residual_bad_events = 0;
            break;
        }
        if (rounds >= budget) {
            result.stats.residual_bad_events = bad_count;
            result.stats.best_effort = true;
            break;
        }
        ++rounds;
        assigned.colours[violator] = rng.int_below(palette);
        for (int u : g.neighbours(violator)) assigned.colours[u] = rng.int_below(palette);
        f = uncolour_conflicts(g, assigned);
    }
    result.stats.rounds_used = rounds;

    auto completion = greedy_complete(g, f, mu_delta);
    result.colouring = std::move(completion.colouring);
    result.stats.measured_peacefulness = peace_report(g, result.colouring).peacefulness;
    return result;
}

}  // namespace peacekit
