#include <doctest.h>

#include "peacekit/oracle.hpp"

using namespace peacekit;

namespace {

Graph complete(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

Graph cycle(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
    return Graph::from_edges(n, edges);
}

// exhaustive reference: enumerate every proper colouring directly
int brute_min_peacefulness(const Graph& g, int c) {
    int n = g.vertex_count();
    std::vector<int> colour(n, 0);
    int best = -1;
    while (true) {
        bool proper = true;
        for (int v = 0; v < n && proper; ++v)
            for (int u : g.neighbours(v))
                if (u > v && colour[u] == colour[v]) proper = false;
        if (proper) {
            PartialColouring f(n, c);
            f.colours = colour;
            int p = peace_report(g, f).peacefulness;
            if (best == -1 || p < best) best = p;
        }
        int pos = n - 1;
        while (pos >= 0 && colour[pos] == c - 1) colour[pos--] = 0;
        if (pos < 0) break;
        ++colour[pos];
    }
    return best;
}

}  // namespace

TEST_CASE("oracle fixtures") {
    auto k4 = min_peacefulness_exact(complete(4), 4);
    CHECK(k4.p_star == 0);
    CHECK(peace_report(complete(4), k4.witness).peacefulness == 0);

    // C5 with three colours: any proper colouring repeats a colour on the
    // second neighbourhood, so 2 is the floor (exhaustively verified below)
    auto c5 = min_peacefulness_exact(cycle(5), 3);
    CHECK(c5.p_star == 2);
    CHECK(brute_min_peacefulness(cycle(5), 3) == 2);
    CHECK(peace_report(cycle(5), c5.witness).peacefulness == 2);

    Graph star = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(min_peacefulness_exact(star, 5).p_star == 0);
}

TEST_CASE("oracle error paths") {
    CHECK_THROWS_AS(min_peacefulness_exact(complete(3), 2), NotColourableError);
    OracleOptions tight;
    tight.node_cap = 10;
    CHECK_THROWS_AS(min_peacefulness_exact(complete(8), 8, tight), OracleCapExceeded);
}

TEST_CASE("certify_no_peaceful is consistent with the minimum") {
    CHECK(certify_no_peaceful(cycle(5), 3, 1.0));
    CHECK(!certify_no_peaceful(complete(4), 4, 0.0));
    CHECK_THROWS_AS(certify_no_peaceful(complete(3), 2, 0.0), NotColourableError);
}

TEST_CASE("witness always achieves p_star exactly") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Graph g = random_regular(8, 3, seed);
        auto res = min_peacefulness_exact(g, 4);
        CHECK(peace_report(g, res.witness).peacefulness == res.p_star);
        CHECK(res.witness.is_total());
    }
}

TEST_CASE("symmetry pruning does not change p_star (n <= 6)") {
    OracleOptions plain;
    plain.symmetry_breaking = false;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        Graph g = random_regular(6, 3, seed + 50);
        auto pruned = min_peacefulness_exact(g, 4);
        auto full = min_peacefulness_exact(g, 4, plain);
        CHECK(pruned.p_star == full.p_star);
        CHECK(pruned.p_star == brute_min_peacefulness(g, 4));
    }
    // a couple of irregular graphs too
    Graph paw = Graph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    CHECK(min_peacefulness_exact(paw, 3).p_star ==
          min_peacefulness_exact(paw, 3, plain).p_star);
    CHECK(min_peacefulness_exact(paw, 3).p_star == brute_min_peacefulness(paw, 3));
}
