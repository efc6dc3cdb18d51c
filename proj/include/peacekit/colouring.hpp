#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "peacekit/graph.hpp"

namespace peacekit {

constexpr int kUncoloured = -1;

// Vertex colouring with an explicit palette; kUncoloured marks absent values.
// Proper-partial invariant (no monochromatic edge among coloured vertices)
// is checked by validate_proper, not enforced on every mutation.
struct PartialColouring {
    std::vector<int> colours;
    int palette_size = 0;

    PartialColouring() = default;
    PartialColouring(int n, int palette) : colours(n, kUncoloured), palette_size(palette) {}

    bool is_coloured(int v) const { return colours[v] != kUncoloured; }
    bool is_total() const {
        for (int c : colours)
            if (c == kUncoloured) return false;
        return true;
    }
    int coloured_count() const {
        int k = 0;
        for (int c : colours)
            if (c != kUncoloured) ++k;
        return k;
    }
    int colours_used() const;

    bool operator==(const PartialColouring&) const = default;
};

class ImproperColouringError : public std::runtime_error {
public:
    explicit ImproperColouringError(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidColouringError : public std::runtime_error {
public:
    explicit InvalidColouringError(const std::string& msg) : std::runtime_error(msg) {}
};

// Throws InvalidColouringError on size/palette mismatch and
// ImproperColouringError on a monochromatic edge.
void validate_proper(const Graph& g, const PartialColouring& f);
bool is_proper(const Graph& g, const PartialColouring& f);

// Per-vertex neighbourhood accounting.  A coloured neighbour w of v is
// undisturbed when no other neighbour of v carries f(w); otherwise it is
// disturbed.  Identity: undisturbed + disturbed + uncoloured == deg(v).
struct PeaceReport {
    std::vector<int> undisturbed;
    std::vector<int> disturbed;
    std::vector<int> uncoloured_neighbours;
    int peacefulness = 0;  // max over v of disturbed[v]
};

PeaceReport peace_report(const Graph& g, const PartialColouring& f);

// True iff f is total, proper, and every vertex has at most p disturbed
// neighbours.  Throws on partial input.
bool is_p_peaceful(const Graph& g, const PartialColouring& f, double p);

// Greedy completion.  Preconditions per the completion argument: palette
// >= Delta+1; every exempt set is a verified clique of size >= Delta+1-p/2;
// every other vertex v satisfies U_v - |N(v)-dom(f)| >= deg(v) - p.  The
// completion always runs (ascending vertex order, smallest free colour);
// callers inspect the report before trusting p-peacefulness.
struct GreedyCompletionResult {
    PartialColouring colouring;
    bool preconditions_ok = false;
    std::vector<int> violating_vertices;  // non-exempt vertices failing the slack bound
    std::vector<std::string> exempt_errors;
};

GreedyCompletionResult greedy_complete(const Graph& g, const PartialColouring& f, double p,
                                       const std::vector<std::vector<int>>& exempt_cliques = {});

// Mean over vertices of the fraction of neighbours whose colour is unique
// in the neighbourhood (isolated vertices contribute 1).
double unique_neighbour_mean(const Graph& g, const PartialColouring& f);

}  // namespace peacekit
