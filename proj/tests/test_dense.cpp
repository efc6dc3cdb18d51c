#include <doctest.h>

#include <set>

#include "peacekit/dense.hpp"

using namespace peacekit;

namespace {

Graph complete(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

Graph complete_minus_matching(int n, int matched) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool is_matching = j == i + 1 && i % 2 == 0 && i < 2 * matched;
            if (!is_matching) edges.emplace_back(i, j);
        }
    return Graph::from_edges(n, edges);
}

std::vector<int> iota_set(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

TEST_CASE("dense_decompose: one clique, parameter errors, sparse random graph") {
    // K_201 with d = 2: a single dense set covering everything
    Graph k = complete(201);
    auto res = dense_decompose(k, 2);
    CHECK(res.ok);
    REQUIRE(res.decomposition.dense_sets.size() == 1);
    CHECK(res.decomposition.dense_sets[0].size() == 201);
    CHECK(res.decomposition.sparse_set.empty());

    // cycle: Delta = 2, no admissible d
    Graph c = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    CHECK_THROWS_AS(dense_decompose(c, 1), std::invalid_argument);

    // random 120-regular graph is locally sparse: no dense sets at d = 1
    Graph r = random_regular(240, 120, 17);
    auto sparse = dense_decompose(r, 1);
    CHECK(sparse.ok);
    CHECK(sparse.decomposition.dense_sets.empty());
    CHECK(static_cast<int>(sparse.decomposition.sparse_set.size()) == 240);
}

TEST_CASE("decomposition validators catch bad partitions") {
    Graph k = complete(201);
    DenseDecomposition dd;
    dd.d = 2;
    dd.dense_sets = {iota_set(100)};  // too small, and rule (b) broken
    for (int v = 100; v < 201; ++v) dd.sparse_set.push_back(v);
    auto failures = validate_decomposition(k, dd);
    CHECK(!failures.empty());
}

TEST_CASE("suitable colouring of a clique: all singletons") {
    Graph k = complete(25);
    auto res = suitable_colouring(k, iota_set(25));
    REQUIRE(res.ok);
    for (const auto& cls : res.colouring.classes) CHECK(cls.size() == 1);
    CHECK(res.colouring.classes.size() == 25);
}

TEST_CASE("suitable colouring of K minus a matching pairs things up") {
    // K_25 minus a perfect matching on 10 vertices: degree 23 or 24, Delta = 24
    Graph g = complete_minus_matching(25, 5);
    auto res = suitable_colouring(g, iota_set(25));
    REQUIRE_MESSAGE(res.ok, res.failing_bullet);
    int pairs = 0;
    for (const auto& cls : res.colouring.classes) {
        CHECK(cls.size() <= 2);
        if (cls.size() == 2) ++pairs;
    }
    CHECK(pairs == 5);
    CHECK(validate_suitable(g, iota_set(25), res.colouring).empty());
}

TEST_CASE("very suitable classification") {
    Graph k = complete(25);
    auto res = suitable_colouring(k, iota_set(25));
    // 25 singletons >= Delta - 40*ceil(20*eps*Delta) for every epsilon
    CHECK(is_very_suitable(res.colouring, k.max_degree(), 1.0 / 8001.0));

    // an artificial colouring with no singletons is not very suitable at a
    // tiny epsilon threshold, checked via the raw count rule
    SuitableColouring sc;
    sc.classes = {{0, 1}, {2, 3}};
    // delta = 200, eps makes the threshold 200 - 40*1 = 160 > 0 singletons
    CHECK(!is_very_suitable(sc, 200, 1.0 / 8001.0));
}

TEST_CASE("extend over a very suitable clique") {
    int n = 25;
    Graph k = complete(n);
    auto sres = suitable_colouring(k, iota_set(n));
    REQUIRE(sres.ok);

    // hold out 4 singleton vertices, palette n - 4
    auto singles = sres.colouring.singleton_vertices();
    std::vector<int> hold(singles.begin(), singles.begin() + 4);
    PartialColouring base(n, n - 4);
    auto ext = extend_over_very_suitable(k, base, iota_set(n), sres.colouring, hold);
    REQUIRE_MESSAGE(ext.ok, ext.error);
    validate_proper(k, ext.colouring);
    int coloured = 0;
    for (int v = 0; v < n; ++v)
        if (ext.colouring.is_coloured(v)) ++coloured;
    CHECK(coloured == n - 4);
    for (int v : hold) CHECK(!ext.colouring.is_coloured(v));
}

TEST_CASE("extend keeps non-singleton classes monochromatic") {
    int n = 25;
    Graph g = complete_minus_matching(n, 5);
    auto sres = suitable_colouring(g, iota_set(n));
    REQUIRE(sres.ok);
    int delta = g.max_degree();
    auto singles2 = sres.colouring.singleton_vertices();
    REQUIRE(static_cast<int>(singles2.size()) >= 2);
    std::vector<int> hold(singles2.begin(), singles2.begin() + 2);
    PartialColouring base(n, delta + 1 - 2);
    auto ext = extend_over_very_suitable(g, base, iota_set(n), sres.colouring, hold);
    REQUIRE_MESSAGE(ext.ok, ext.error);
    validate_proper(g, ext.colouring);
    for (const auto& cls : sres.colouring.classes) {
        if (cls.size() < 2) continue;
        for (std::size_t i = 1; i < cls.size(); ++i)
            CHECK(ext.colouring.colours[cls[i]] == ext.colouring.colours[cls[0]]);
    }
}

TEST_CASE("extensions never recolour the outside part") {
    // two disjoint cliques; the second is the dense set
    int n = 40;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 20; ++i)
        for (int j = i + 1; j < 20; ++j) {
            edges.emplace_back(i, j);
            edges.emplace_back(20 + i, 20 + j);
        }
    Graph g = Graph::from_edges(n, edges);
    std::vector<int> dense;
    for (int v = 20; v < 40; ++v) dense.push_back(v);
    auto sres = suitable_colouring(g, dense);
    REQUIRE(sres.ok);

    PartialColouring base(n, 20);
    for (int v = 0; v < 20; ++v) base.colours[v] = v;  // V' coloured
    auto before = base;
    auto singles3 = sres.colouring.singleton_vertices();
    std::vector<int> hold(singles3.begin(), singles3.begin() + 3);
    auto ext = extend_over_very_suitable(g, base, dense, sres.colouring, hold);
    REQUIRE(ext.ok);
    for (int v = 0; v < 20; ++v) CHECK(ext.colouring.colours[v] == before.colours[v]);
}

TEST_CASE("not-very-suitable extension on a small fixture") {
    // Delta small: the count-based selections are expected to fail with a
    // structured report rather than crash
    Graph g = complete_minus_matching(25, 12);
    PartialColouring base(25, g.max_degree() + 1 - k_block_size(g.max_degree(), 1.0 / 40.0));
    auto ext = extend_over_not_very_suitable(g, base, iota_set(25), 1.0 / 40.0);
    if (ext.ok) {
        validate_proper(g, ext.colouring);
        for (int v = 0; v < 25; ++v) CHECK(ext.colouring.is_coloured(v));
    } else {
        CHECK(!ext.error.empty());
    }
}
