#include "peacekit/colouring.hpp"

#include <algorithm>

namespace peacekit {

int PartialColouring::colours_used() const {
    std::vector<char> seen(palette_size, 0);
    int used = 0;
    for (int c : colours)
        if (c != kUncoloured && !seen[c]) {
            seen[c] = 1;
            ++used;
        }
    return used;
}

void validate_proper(const Graph& g, const PartialColouring& f) {
    if (static_cast<int>(f.colours.size()) != g.vertex_count())
        throw InvalidColouringError("colouring size does not match vertex count");
    for (int v = 0; v < g.vertex_count(); ++v) {
        int c = f.colours[v];
        if (c == kUncoloured) continue;
        if (c < 0 || c >= f.palette_size)
            throw InvalidColouringError("colour out of palette at vertex " + std::to_string(v));
        for (int u : g.neighbours(v))
            if (u > v && f.colours[u] == c)
                throw ImproperColouringError("monochromatic edge " + std::to_string(v) + "-" +
                                             std::to_string(u));
    }
}

bool is_proper(const Graph& g, const PartialColouring& f) {
    try {
        validate_proper(g, f);
    } catch (const std::runtime_error&) {
        return false;
    }
    return true;
}

PeaceReport peace_report(const Graph& g, const PartialColouring& f) {
    validate_proper(g, f);
    int n = g.vertex_count();
    PeaceReport rep;
    rep.undisturbed.assign(n, 0);
    rep.disturbed.assign(n, 0);
    rep.uncoloured_neighbours.assign(n, 0);

    // colour-frequency pass with a stamped scratch array
    std::vector<int> freq(std::max(1, f.palette_size), 0);
    std::vector<int> stamp(std::max(1, f.palette_size), -1);
    for (int v = 0; v < n; ++v) {
        for (int w : g.neighbours(v)) {
            int c = f.colours[w];
            if (c == kUncoloured) continue;
            if (stamp[c] != v) {
                stamp[c] = v;
                freq[c] = 0;
            }
            ++freq[c];
        }
        for (int w : g.neighbours(v)) {
            int c = f.colours[w];
            if (c == kUncoloured) {
                ++rep.uncoloured_neighbours[v];
            } else if (freq[c] == 1) {
                ++rep.undisturbed[v];
            } else {
                ++rep.disturbed[v];
            }
        }
        rep.peacefulness = std::max(rep.peacefulness, rep.disturbed[v]);
    }
    return rep;
}

bool is_p_peaceful(const Graph& g, const PartialColouring& f, double p) {
    if (!f.is_total())
        throw InvalidColouringError("is_p_peaceful requires a total colouring");
    return peace_report(g, f).peacefulness <= p;
}

GreedyCompletionResult greedy_complete(const Graph& g, const PartialColouring& f, double p,
                                       const std::vector<std::vector<int>>& exempt_cliques) {
    int n = g.vertex_count();
    int delta = g.max_degree();
    if (f.palette_size < delta + 1)
        throw InvalidColouringError("greedy_complete: palette must have at least Delta+1 colours");
    validate_proper(g, f);

    GreedyCompletionResult result;
    result.preconditions_ok = true;

    std::vector<char> exempt(n, 0);
    for (const auto& clique : exempt_cliques) {
        if (!is_clique(g, clique)) {
            result.exempt_errors.push_back("exempt set is not a clique");
            result.preconditions_ok = false;
            continue;
        }
        if (2.0 * static_cast<double>(clique.size()) < 2.0 * (delta + 1) - p) {
            result.exempt_errors.push_back("exempt clique smaller than Delta+1-p/2");
            result.preconditions_ok = false;
            continue;
        }
        for (int v : clique) exempt[v] = 1;
    }

    PeaceReport rep = peace_report(g, f);
    for (int v = 0; v < n; ++v) {
        if (exempt[v]) continue;
        // U_v - |N(v)-dom(f)| >= deg(v) - p
        if (rep.undisturbed[v] - rep.uncoloured_neighbours[v] <
            static_cast<double>(g.degree(v)) - p) {
            result.violating_vertices.push_back(v);
            result.preconditions_ok = false;
        }
    }

    result.colouring = f;
    std::vector<char> taken(f.palette_size, 0);
    for (int v = 0; v < n; ++v) {
        if (result.colouring.is_coloured(v)) continue;
        for (int u : g.neighbours(v)) {
            int c = result.colouring.colours[u];
            if (c != kUncoloured) taken[c] = 1;
        }
        int pick = -1;
        for (int c = 0; c < result.colouring.palette_size; ++c)
            if (!taken[c]) {
                pick = c;
                break;
            }
        for (int u : g.neighbours(v)) {
            int c = result.colouring.colours[u];
            if (c != kUncoloured) taken[c] = 0;
        }
        // palette >= Delta+1 guarantees a free colour
        if (pick < 0) throw std::logic_error("greedy_complete: no free colour despite palette bound");
        result.colouring.colours[v] = pick;
    }
    return result;
}

double unique_neighbour_mean(const Graph& g, const PartialColouring& f) {
    int n = g.vertex_count();
    if (n == 0) return 1.0;
    PeaceReport rep = peace_report(g, f);
    double sum = 0.0;
    for (int v = 0; v < n; ++v) {
        if (g.degree(v) == 0) {
            sum += 1.0;
        } else {
            sum += static_cast<double>(rep.undisturbed[v]) / g.degree(v);
        }
    }
    return sum / n;
}

}  // namespace peacekit
