#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace peacekit {

// Undirected simple graph with sorted adjacency lists.  Immutable after
// construction; generators are pure functions of (parameters, seed).
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adjacency_(n) {}

    // Builds from an edge list, normalizing and validating (no self-loops,
    // no duplicates, indices in range).
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return static_cast<int>(adjacency_.size()); }
    int edge_count() const;
    int max_degree() const { return delta_; }
    int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
    const std::vector<int>& neighbours(int v) const { return adjacency_[v]; }
    bool has_edge(int u, int v) const;

    bool operator==(const Graph& other) const { return adjacency_ == other.adjacency_; }

    // Full-scan structural check: symmetry, sortedness, no loops/duplicates,
    // cached max degree.  Throws std::logic_error on violation.
    void validate() const;

private:
    std::vector<std::vector<int>> adjacency_;
    int delta_ = 0;
};

struct Bipartition {
    std::vector<int> side_a;
    std::vector<int> side_b;
};

// --- file I/O -------------------------------------------------------------

enum class GraphParseErrorKind {
    MalformedHeader,
    AsymmetricEdge,   // edge line with u >= v (format stores each edge once, low endpoint first)
    IndexOutOfRange,
    BadEdgeCount,
    DuplicateEdge,
};

class GraphParseError : public std::runtime_error {
public:
    GraphParseError(GraphParseErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    GraphParseErrorKind kind() const { return kind_; }

private:
    GraphParseErrorKind kind_;
};

Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);
Graph parse_graph(const std::string& text);
std::string format_graph(const Graph& g);

// --- generators -----------------------------------------------------------

// Random delta-regular simple graph via the configuration model: stubs are
// paired greedily, rejecting loop/duplicate pairings, with a bounded
// edge-swap repair for the tail and up to `max_restarts` full restarts.
Graph random_regular(int n, int delta, std::uint64_t seed, int max_restarts = 1000);

// Embeds g into a delta-regular host by repeatedly taking two copies and
// joining the copies of each deficient vertex.  g stays induced on the
// first n vertices.
Graph regularize_by_doubling(const Graph& g, int delta);

// Bipartite lower-bound construction: |A| = floor(delta^2 / ln^{3/2} delta),
// |B| = delta, every b in B adjacent to a random delta-subset of A.
// A occupies vertices [0, |A|), B the rest.
std::pair<Graph, Bipartition> adversarial_bipartite(int delta, std::uint64_t seed);

// --- structural queries ---------------------------------------------------

int max_codegree(const Graph& g);

// Heuristic disjoint cliques of size >= threshold (greedy expansion from
// high-degree seeds plus caller-supplied seed sets).  Every returned set is
// verified pairwise; completeness is not guaranteed.
std::vector<std::vector<int>> find_large_cliques(const Graph& g, int threshold,
                                                 const std::vector<std::vector<int>>& seed_sets = {});

bool is_clique(const Graph& g, const std::vector<int>& vs);

}  // namespace peacekit
