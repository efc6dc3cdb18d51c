#include "peacekit/dsatur.hpp"

#include <algorithm>

#include "peacekit/rng.hpp"

namespace peacekit {

namespace {

bool one_attempt(const Graph& g, PartialColouring& f, const std::vector<int>& targets, int limit,
                 Rng* rng) {
    int n = g.vertex_count();
    std::vector<char> pending(n, 0);
    for (int v : targets) pending[v] = 1;

    // forbidden[v]: band colours already on neighbours of v
    std::vector<std::vector<char>> forbidden;
    std::vector<int> slot(n, -1), saturation, degree_pending;
    std::vector<int> order;
    for (int v : targets) {
        slot[v] = static_cast<int>(order.size());
        order.push_back(v);
    }
    forbidden.assign(order.size(), std::vector<char>(limit, 0));
    saturation.assign(order.size(), 0);
    degree_pending.assign(order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        for (int u : g.neighbours(v)) {
            int c = f.colours[u];
            if (c != kUncoloured && c < limit && !forbidden[i][c]) {
                forbidden[i][c] = 1;
                ++saturation[i];
            }
            if (pending[u]) ++degree_pending[i];
        }
    }

    std::size_t remaining = order.size();
    std::vector<char> done(order.size(), 0);
    while (remaining > 0) {
        int best = -1;
        int ties = 0;
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (done[i]) continue;
            if (best == -1 || saturation[i] > saturation[best] ||
                (saturation[i] == saturation[best] &&
                 degree_pending[i] > degree_pending[best])) {
                best = static_cast<int>(i);
                ties = 1;
            } else if (rng && saturation[i] == saturation[best] &&
                       degree_pending[i] == degree_pending[best]) {
                // reservoir pick among exact ties for randomized attempts
                ++ties;
                if (rng->below(ties) == 0) best = static_cast<int>(i);
            }
        }
        int v = order[best];
        int pick = -1;
        for (int c = 0; c < limit; ++c)
            if (!forbidden[best][c]) {
                pick = c;
                break;
            }
        if (pick < 0) return false;
        f.colours[v] = pick;
        done[best] = 1;
        --remaining;
        for (int u : g.neighbours(v)) {
            if (!pending[u] || slot[u] < 0 || done[slot[u]]) continue;
            int i = slot[u];
            if (!forbidden[i][pick]) {
                forbidden[i][pick] = 1;
                ++saturation[i];
            }
        }
    }
    return true;
}

}  // namespace

bool dsatur_extend(const Graph& g, PartialColouring& f, const std::vector<int>& targets, int limit,
                   std::uint64_t seed, int attempts) {
    if (limit <= 0) return targets.empty();
    for (int attempt = 0; attempt < attempts; ++attempt) {
        PartialColouring trial = f;
        if (attempt == 0) {
            if (one_attempt(g, trial, targets, limit, nullptr)) {
                f = std::move(trial);
                return true;
            }
        } else {
            Rng rng = Rng::stream(seed, 0xd5a7ULL, attempt);
            if (one_attempt(g, trial, targets, limit, &rng)) {
                f = std::move(trial);
                return true;
            }
        }
    }
    return false;
}

}  // namespace peacekit
