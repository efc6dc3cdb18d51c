#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "peacekit/graph.hpp"
#include "peacekit/rng.hpp"

using namespace peacekit;

namespace {

Graph path3() { return Graph::from_edges(3, {{0, 1}, {1, 2}}); }

Graph petersen() {
    // outer 5-cycle, inner pentagram, spokes
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);
        edges.emplace_back(i, 5 + i);
    }
    return Graph::from_edges(10, edges);
}

// independent pairwise intersection count, the brute oracle for max_codegree
int brute_codegree(const Graph& g) {
    int best = 0;
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = u + 1; v < g.vertex_count(); ++v) {
            int common = 0;
            for (int w : g.neighbours(u))
                if (g.has_edge(v, w) || std::binary_search(g.neighbours(v).begin(),
                                                           g.neighbours(v).end(), w))
                    ++common;
            best = std::max(best, common);
        }
    return best;
}

}  // namespace

TEST_CASE("parse: triangle, isolated vertex, and errors are distinct") {
    Graph k3 = parse_graph("3 3\n0 1\n1 2\n0 2\n");
    CHECK(k3.vertex_count() == 3);
    CHECK(k3.edge_count() == 3);
    CHECK(k3.max_degree() == 2);
    k3.validate();

    Graph single = parse_graph("1 0\n");
    CHECK(single.vertex_count() == 1);
    CHECK(single.edge_count() == 0);

    auto kind_of = [](const std::string& text) {
        try {
            parse_graph(text);
        } catch (const GraphParseError& e) {
            return e.kind();
        }
        FAIL("expected a parse error");
        return GraphParseErrorKind::MalformedHeader;
    };
    CHECK(kind_of("banana\n") == GraphParseErrorKind::MalformedHeader);
    CHECK(kind_of("2 1\n1 0\n") == GraphParseErrorKind::AsymmetricEdge);
    CHECK(kind_of("2 1\n1 1\n") == GraphParseErrorKind::AsymmetricEdge);
    CHECK(kind_of("2 1\n0 5\n") == GraphParseErrorKind::IndexOutOfRange);
    CHECK(kind_of("2 2\n0 1\n") == GraphParseErrorKind::BadEdgeCount);
    CHECK(kind_of("3 2\n0 1\n0 1\n") == GraphParseErrorKind::DuplicateEdge);
}

TEST_CASE("format round-trip is bit-exact") {
    Graph g = random_regular(100, 8, 1);
    std::string text = format_graph(g);
    Graph back = parse_graph(text);
    CHECK(back == g);
    CHECK(format_graph(back) == text);
}

TEST_CASE("random_regular: K4, cycle cover, degrees, determinism") {
    Graph k4 = random_regular(4, 3, 99);
    CHECK(k4.edge_count() == 6);  // unique 3-regular graph on 4 vertices

    Graph cycles = random_regular(6, 2, 5);
    for (int v = 0; v < 6; ++v) CHECK(cycles.degree(v) == 2);
    cycles.validate();

    Graph g1 = random_regular(100, 8, 1);
    Graph g2 = random_regular(100, 8, 1);
    CHECK(g1 == g2);
    for (int v = 0; v < 100; ++v) REQUIRE(g1.degree(v) == 8);
    g1.validate();

    CHECK_THROWS_AS(random_regular(5, 3, 0), std::invalid_argument);  // parity
    CHECK_THROWS_AS(random_regular(4, 4, 0), std::invalid_argument);  // delta >= n

    // dense regime goes through the swap generator
    Graph dense = random_regular(64, 32, 3);
    for (int v = 0; v < 64; ++v) REQUIRE(dense.degree(v) == 32);
    dense.validate();
}

TEST_CASE("regularize_by_doubling") {
    // already regular stays put
    Graph k4 = random_regular(4, 3, 0);
    CHECK(regularize_by_doubling(k4, 3) == k4);
    Graph edge = Graph::from_edges(2, {{0, 1}});
    CHECK(regularize_by_doubling(edge, 1) == edge);

    Graph host = regularize_by_doubling(path3(), 2);
    for (int v = 0; v < host.vertex_count(); ++v) REQUIRE(host.degree(v) == 2);
    host.validate();
    // original graph stays induced on the first three vertices
    CHECK(host.has_edge(0, 1));
    CHECK(host.has_edge(1, 2));
    CHECK(!host.has_edge(0, 2));

    CHECK_THROWS_AS(regularize_by_doubling(path3(), 1), std::invalid_argument);

    // top-level doubling keeps cross-copy codegree at most two
    Graph g = random_regular(12, 4, 7);
    Graph bigger = regularize_by_doubling(Graph::from_edges(13, [&] {
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < 12; ++u)
            for (int v : g.neighbours(u))
                if (u < v) edges.emplace_back(u, v);
        return edges;
    }()), 4);
    int half = bigger.vertex_count() / 2;
    for (int u = 0; u < half; ++u)
        for (int v = half; v < bigger.vertex_count(); ++v) {
            int common = 0;
            for (int w : bigger.neighbours(u))
                if (bigger.has_edge(v, w)) ++common;
            REQUIRE(common <= 2);
        }
}

TEST_CASE("adversarial_bipartite sizes and determinism") {
    auto [g, bip] = adversarial_bipartite(16, 0);
    CHECK(static_cast<int>(bip.side_b.size()) == 16);
    long long bsum = 0;
    for (int b : bip.side_b) {
        CHECK(g.degree(b) == 16);
        bsum += g.degree(b);
        for (int a : g.neighbours(b)) CHECK(a < static_cast<int>(bip.side_a.size()));
    }
    CHECK(bsum == 16LL * 16);
    g.validate();

    auto [g2, bip2] = adversarial_bipartite(16, 0);
    CHECK(g == g2);

    // |A| follows the floor(delta^2 / ln^{3/2} delta) formula
    auto [g256, bip256] = adversarial_bipartite(256, 1);
    int expect_a = static_cast<int>(
        std::floor(256.0 * 256.0 / std::pow(std::log(256.0), 1.5)));
    CHECK(static_cast<int>(bip256.side_a.size()) == expect_a);

    CHECK_THROWS_AS(adversarial_bipartite(8, 0), std::invalid_argument);
}

TEST_CASE("max_codegree on knowns and against the brute oracle") {
    CHECK(max_codegree(Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}})) == 1);
    CHECK(max_codegree(Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}})) == 2);  // K_{2,2}
    CHECK(max_codegree(petersen()) == 1);
    CHECK(max_codegree(Graph(1)) == 0);
    CHECK(max_codegree(Graph(0)) == 0);

    Graph g = random_regular(100, 8, 1);
    CHECK(max_codegree(g) == brute_codegree(g));
    CHECK(max_codegree(g) == 4);  // frozen fixture for (n=100, delta=8, seed=1)
}

TEST_CASE("find_large_cliques returns verified disjoint cliques") {
    // K10
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j) edges.emplace_back(i, j);
    Graph k10 = Graph::from_edges(10, edges);
    auto cliques = find_large_cliques(k10, 10);
    REQUIRE(cliques.size() == 1);
    CHECK(static_cast<int>(cliques[0].size()) == 10);

    // C5 is triangle-free
    Graph c5 = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    CHECK(find_large_cliques(c5, 3).empty());

    // two disjoint K7s
    edges.clear();
    for (int base : {0, 7})
        for (int i = 0; i < 7; ++i)
            for (int j = i + 1; j < 7; ++j) edges.emplace_back(base + i, base + j);
    Graph two = Graph::from_edges(14, edges);
    auto sevens = find_large_cliques(two, 7);
    REQUIRE(sevens.size() == 2);
    std::set<int> all;
    for (const auto& c : sevens) {
        REQUIRE(static_cast<int>(c.size()) == 7);
        REQUIRE(is_clique(two, c));
        for (int v : c) {
            // exhaustive pairwise check on the 14 vertices: sets are disjoint
            REQUIRE(all.insert(v).second);
        }
    }
}
