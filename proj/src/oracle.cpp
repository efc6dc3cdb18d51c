#include "peacekit/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace peacekit {

namespace {

// Degeneracy order (repeatedly remove a minimum-degree vertex), reversed so
// that each branching vertex sees as many already-coloured neighbours as
// possible.
std::vector<int> branching_order(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> deg(n), removed(n, 0), order;
    order.reserve(n);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!removed[v] && (best == -1 || deg[v] < deg[best])) best = v;
        removed[best] = 1;
        order.push_back(best);
        for (int u : g.neighbours(best))
            if (!removed[u]) --deg[u];
    }
    std::reverse(order.begin(), order.end());
    return order;
}

struct Search {
    const Graph& g;
    int c;
    const OracleOptions& opts;
    std::vector<int> order;
    std::vector<int> colour;                  // current partial assignment
    std::vector<std::vector<int>> colour_cnt; // colour_cnt[v][x]: coloured nbrs of v with colour x
    std::vector<int> disturbed;               // current disturbed count per vertex (monotone)
    int best = -1;
    std::vector<int> best_colours;
    std::uint64_t nodes = 0;

    Search(const Graph& graph, int palette, const OracleOptions& options)
        : g(graph), c(palette), opts(options), order(branching_order(graph)),
          colour(graph.vertex_count(), kUncoloured),
          colour_cnt(graph.vertex_count(), std::vector<int>(palette, 0)),
          disturbed(graph.vertex_count(), 0) {}

    // Applies colour x to vertex v; returns the list of neighbours whose
    // disturbed count was bumped (with the bump size encoded for undo).
    void assign(int v, int x, std::vector<std::pair<int, int>>& bumps) {
        colour[v] = x;
        for (int u : g.neighbours(v)) {
            int before = colour_cnt[u][x]++;
            int bump = before == 0 ? 0 : (before == 1 ? 2 : 1);
            if (bump) {
                disturbed[u] += bump;
                bumps.emplace_back(u, bump);
            }
        }
    }

    void unassign(int v, int x, const std::vector<std::pair<int, int>>& bumps) {
        colour[v] = kUncoloured;
        for (int u : g.neighbours(v)) --colour_cnt[u][x];
        for (auto [u, bump] : bumps) disturbed[u] -= bump;
    }

    void dfs(std::size_t idx, int max_used) {
        if (++nodes > opts.node_cap)
            throw OracleCapExceeded("oracle node cap exceeded");
        if (idx == order.size()) {
            int peace = 0;
            for (int v = 0; v < g.vertex_count(); ++v) peace = std::max(peace, disturbed[v]);
            if (best == -1 || peace < best) {
                best = peace;
                best_colours = colour;
            }
            return;
        }
        int v = order[idx];
        int limit = opts.symmetry_breaking ? std::min(c - 1, max_used + 1) : c - 1;
        std::vector<std::pair<int, int>> bumps;
        for (int x = 0; x <= limit; ++x) {
            if (colour_cnt[v][x] > 0) continue;  // proper-colouring pruning
            bumps.clear();
            assign(v, x, bumps);
            // disturbed counts only grow as the colouring extends
            bool prune = false;
            if (best != -1) {
                if (disturbed[v] >= best) prune = true;
                for (auto [u, bump] : bumps)
                    if (disturbed[u] >= best) prune = true;
            }
            if (!prune) dfs(idx + 1, std::max(max_used, x));
            unassign(v, x, bumps);
            if (best == 0) return;  // cannot improve on a rainbow neighbourhood
        }
    }
};

}  // namespace

OracleResult min_peacefulness_exact(const Graph& g, int c, const OracleOptions& opts) {
    int n = g.vertex_count();
    if (n == 0) {
        OracleResult r;
        r.witness = PartialColouring(0, c);
        return r;
    }
    if (c <= 0) throw NotColourableError("palette is empty");
    // c^n <= cap precondition (overflow-safe)
    double states = n * std::log(static_cast<double>(c));
    if (states > std::log(static_cast<double>(opts.node_cap)) + 1e-9)
        throw OracleCapExceeded("c^n exceeds the configured state cap");

    Search search(g, c, opts);
    search.dfs(0, -1);
    if (search.best == -1) throw NotColourableError("graph has no proper colouring with this palette");

    OracleResult result;
    result.p_star = search.best;
    result.witness.colours = search.best_colours;
    result.witness.palette_size = c;
    result.nodes_visited = search.nodes;
    return result;
}

bool certify_no_peaceful(const Graph& g, int c, double p, const OracleOptions& opts) {
    return min_peacefulness_exact(g, c, opts).p_star > p;
}

}  // namespace peacekit
