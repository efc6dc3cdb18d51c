#include "peacekit/dense.hpp"

#include <algorithm>
#include <numeric>

namespace peacekit {

std::vector<long long> neighbourhood_edge_counts(const Graph& g) {
    int n = g.vertex_count();
    std::vector<long long> counts(n, 0);
    std::vector<int> stamp(n, -1);
    for (int v = 0; v < n; ++v) {
        for (int w : g.neighbours(v)) stamp[w] = v;
        long long e = 0;
        for (int w : g.neighbours(v))
            for (int u : g.neighbours(w))
                if (stamp[u] == v) ++e;
        counts[v] = e / 2;
    }
    return counts;
}

bool is_d_dense(long long nbhd_edges, int delta, int d) {
    // |E(G[N(v)])| >= C(Delta,2) - d*Delta, in exact integer arithmetic
    long long bound = static_cast<long long>(delta) * (delta - 1) / 2 -
                      static_cast<long long>(d) * delta;
    return nbhd_edges >= bound;
}

std::vector<std::string> validate_decomposition(const Graph& g, const DenseDecomposition& dd) {
    std::vector<std::string> failures;
    int n = g.vertex_count();
    int delta = g.max_degree();
    int d = dd.d;

    std::vector<int> owner(n, -1);
    for (std::size_t i = 0; i < dd.dense_sets.size(); ++i)
        for (int v : dd.dense_sets[i]) {
            if (v < 0 || v >= n || owner[v] != -1) {
                failures.push_back("dense sets do not form a partition");
                return failures;
            }
            owner[v] = static_cast<int>(i);
        }
    for (int v : dd.sparse_set) {
        if (v < 0 || v >= n || owner[v] != -1) {
            failures.push_back("sparse set overlaps a dense set");
            return failures;
        }
        owner[v] = static_cast<int>(dd.dense_sets.size());
    }
    for (int v = 0; v < n; ++v)
        if (owner[v] == -1) {
            failures.push_back("vertex " + std::to_string(v) + " unassigned");
            return failures;
        }

    // (a) size bounds
    for (std::size_t i = 0; i < dd.dense_sets.size(); ++i) {
        auto size = static_cast<long long>(dd.dense_sets[i].size());
        if (size < delta + 1 - 8LL * d || size > delta + 4LL * d)
            failures.push_back("(a) dense set " + std::to_string(i) + " has size " +
                               std::to_string(size));
    }

    // (b) membership rule, checked for all vertices against all dense sets
    std::vector<char> in_set(n, 0);
    for (std::size_t i = 0; i < dd.dense_sets.size(); ++i) {
        for (int v : dd.dense_sets[i]) in_set[v] = 1;
        for (int v = 0; v < n; ++v) {
            int inside = 0;
            for (int u : g.neighbours(v))
                if (in_set[u]) ++inside;
            bool rule = 4LL * inside >= 3LL * delta;
            bool member = owner[v] == static_cast<int>(i);
            if (rule != member)
                failures.push_back("(b) vertex " + std::to_string(v) + " vs dense set " +
                                   std::to_string(i));
        }
        for (int v : dd.dense_sets[i]) in_set[v] = 0;
    }

    // (c) every sparse vertex is d-sparse
    auto nbhd_edges = neighbourhood_edge_counts(g);
    for (int v : dd.sparse_set)
        if (is_d_dense(nbhd_edges[v], delta, d))
            failures.push_back("(c) vertex " + std::to_string(v) + " in S is d-dense");
    return failures;
}

DenseDecomposeResult dense_decompose(const Graph& g, int d) {
    int delta = g.max_degree();
    if (d < 1 || 100LL * d > delta)
        throw std::invalid_argument("dense_decompose: require 1 <= d <= Delta/100");
    int n = g.vertex_count();

    auto nbhd_edges = neighbourhood_edge_counts(g);
    std::vector<char> dense(n, 0);
    for (int v = 0; v < n; ++v) dense[v] = is_d_dense(nbhd_edges[v], delta, d) ? 1 : 0;

    DenseDecomposeResult result;
    result.decomposition.d = d;
    std::vector<int> owner(n, -1);
    std::vector<char> member(n, 0);

    for (int seed = 0; seed < n; ++seed) {
        if (!dense[seed] || owner[seed] != -1) continue;
        // start from the closed neighbourhood, iterate the membership rule
        std::vector<int> set;
        set.push_back(seed);
        for (int u : g.neighbours(seed))
            if (owner[u] == -1) set.push_back(u);
        for (int round = 0; round < n; ++round) {
            for (int v : set) member[v] = 1;
            std::vector<int> next;
            for (int v = 0; v < n; ++v) {
                if (owner[v] != -1) continue;
                int inside = 0;
                for (int u : g.neighbours(v))
                    if (member[u]) ++inside;
                if (4LL * inside >= 3LL * delta) next.push_back(v);
            }
            for (int v : set) member[v] = 0;
            bool stable = next == set;
            set.swap(next);
            if (stable) break;
            if (set.empty()) break;
        }
        auto size = static_cast<long long>(set.size());
        if (size >= delta + 1 - 8LL * d && size <= delta + 4LL * d &&
            std::find(set.begin(), set.end(), seed) != set.end()) {
            int idx = static_cast<int>(result.decomposition.dense_sets.size());
            for (int v : set) owner[v] = idx;
            result.decomposition.dense_sets.push_back(std::move(set));
        }
        // otherwise the seed stays unassigned; validator (c) will report it
    }

    for (int v = 0; v < n; ++v)
        if (owner[v] == -1) result.decomposition.sparse_set.push_back(v);

    result.failures = validate_decomposition(g, result.decomposition);
    result.ok = result.failures.empty();
    return result;
}

// --- suitable colourings ----------------------------------------------------

std::string validate_suitable(const Graph& g, const std::vector<int>& dense_set,
                              const SuitableColouring& sc) {
    int delta = g.max_degree();

    std::vector<int> covered;
    for (const auto& cls : sc.classes) {
        if (cls.empty()) return "empty colour class";
        for (int v : cls) covered.push_back(v);
    }
    std::vector<int> want = dense_set;
    std::sort(want.begin(), want.end());
    std::sort(covered.begin(), covered.end());
    if (covered != want) return "classes do not partition the dense set";

    if (static_cast<int>(sc.classes.size()) > delta + 1) return "more than Delta+1 classes";

    for (const auto& cls : sc.classes)
        for (std::size_t i = 0; i < cls.size(); ++i)
            for (std::size_t j = i + 1; j < cls.size(); ++j)
                if (g.has_edge(cls[i], cls[j])) return "colour class not independent";

    auto singles = sc.singleton_vertices();
    if (!is_clique(g, singles)) return "singleton classes do not form a clique";

    bool has_three = false;
    for (const auto& cls : sc.classes) {
        if (cls.size() > 3) return "colour class of size exceeding three";
        if (cls.size() == 3) has_three = true;
    }
    if (has_three) {
        if (static_cast<int>(sc.classes.size()) != delta + 1)
            return "size-3 class without exactly Delta+1 classes";
        for (const auto& cls : sc.classes)
            if (cls.size() == 3)
                for (int v : cls)
                    for (int s : singles)
                        if (!g.has_edge(v, s)) return "size-3 class vertex misses a singleton";
    }
    return {};
}

namespace {

struct LocalClasses {
    // classes[k] lists member vertices; empty slots are reusable colours
    std::vector<std::vector<int>> classes;
    std::vector<int> class_of;  // by position in dense_set

    int nonempty() const {
        int k = 0;
        for (const auto& c : classes)
            if (!c.empty()) ++k;
        return k;
    }
};

}  // namespace

SuitableResult suitable_colouring(const Graph& g, const std::vector<int>& dense_set) {
    int delta = g.max_degree();
    int m = static_cast<int>(dense_set.size());
    std::vector<int> verts = dense_set;

    // induced adjacency among dense_set positions
    std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (g.has_edge(verts[i], verts[j])) adj[i][j] = adj[j][i] = 1;

    LocalClasses lc;
    lc.classes.assign(delta + 1, {});
    lc.class_of.assign(m, -1);

    auto place = [&](int i, int k) {
        lc.classes[k].push_back(i);
        lc.class_of[i] = k;
    };
    auto remove_from = [&](int i) {
        auto& cls = lc.classes[lc.class_of[i]];
        cls.erase(std::find(cls.begin(), cls.end(), i));
        lc.class_of[i] = -1;
    };
    auto fits = [&](int i, int k) {
        for (int j : lc.classes[k])
            if (adj[i][j]) return false;
        return true;
    };

    // greedy start
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= delta; ++k)
            if (fits(i, k)) {
                place(i, k);
                break;
            }
    for (int i = 0; i < m; ++i)
        if (lc.class_of[i] == -1) {
            SuitableResult r;
            r.failing_bullet = "greedy start exceeded Delta+1 colours";
            return r;
        }

    auto find_empty = [&]() {
        for (int k = 0; k <= delta; ++k)
            if (lc.classes[k].empty()) return k;
        return -1;
    };

    // sum-of-squares descent
    long long cap = static_cast<long long>(m) * m + 16;
    for (long long step = 0; step < cap; ++step) {
        bool moved = false;

        // extract from any class of size >= 2 into a free colour
        int empty = find_empty();
        if (empty != -1) {
            for (int k = 0; k <= delta && !moved; ++k)
                if (lc.classes[k].size() >= 2) {
                    int i = *std::min_element(lc.classes[k].begin(), lc.classes[k].end());
                    remove_from(i);
                    place(i, empty);
                    moved = true;
                }
        }
        if (moved) continue;

        // relocate a vertex into a much smaller compatible class
        for (int i = 0; i < m && !moved; ++i) {
            int from = lc.class_of[i];
            auto from_size = lc.classes[from].size();
            if (from_size < 2) continue;
            for (int k = 0; k <= delta && !moved; ++k) {
                if (k == from || lc.classes[k].empty()) continue;
                if (lc.classes[k].size() + 1 < from_size && fits(i, k)) {
                    remove_from(i);
                    place(i, k);
                    moved = true;
                }
            }
        }
        if (moved) continue;

        // merge two nonadjacent singletons, then pull a vertex out of a
        // class of size >= 3 into the freed colour
        int big3 = -1;
        for (int k = 0; k <= delta; ++k)
            if (lc.classes[k].size() >= 3) big3 = k;
        if (big3 != -1) {
            std::vector<int> singles;
            for (int k = 0; k <= delta; ++k)
                if (lc.classes[k].size() == 1) singles.push_back(k);
            for (std::size_t a = 0; a < singles.size() && !moved; ++a)
                for (std::size_t b = a + 1; b < singles.size() && !moved; ++b) {
                    int i = lc.classes[singles[a]][0], j = lc.classes[singles[b]][0];
                    if (adj[i][j]) continue;
                    int freed = singles[b];
                    remove_from(j);
                    place(j, singles[a]);
                    int out = *std::min_element(lc.classes[big3].begin(), lc.classes[big3].end());
                    remove_from(out);
                    place(out, freed);
                    moved = true;
                }
        }
        if (moved) continue;

        // a singleton compatible with a pair frees room to shrink a class of
        // size >= 4
        int big4 = -1;
        for (int k = 0; k <= delta; ++k)
            if (lc.classes[k].size() >= 4) big4 = k;
        if (big4 != -1) {
            for (int ks = 0; ks <= delta && !moved; ++ks) {
                if (lc.classes[ks].size() != 1) continue;
                int s = lc.classes[ks][0];
                for (int kp = 0; kp <= delta && !moved; ++kp) {
                    if (lc.classes[kp].size() != 2 || !fits(s, kp)) continue;
                    remove_from(s);
                    place(s, kp);
                    int out = *std::min_element(lc.classes[big4].begin(), lc.classes[big4].end());
                    remove_from(out);
                    place(out, ks);
                    moved = true;
                }
            }
        }
        if (!moved) break;
    }

    // no class of size >= 3: merge nonadjacent singletons until the
    // remaining singletons are pairwise adjacent
    bool has_three = false;
    for (int k = 0; k <= delta; ++k)
        if (lc.classes[k].size() >= 3) has_three = true;
    if (!has_three) {
        bool merged = true;
        while (merged) {
            merged = false;
            std::vector<int> singles;
            for (int k = 0; k <= delta; ++k)
                if (lc.classes[k].size() == 1) singles.push_back(k);
            for (std::size_t a = 0; a < singles.size() && !merged; ++a)
                for (std::size_t b = a + 1; b < singles.size() && !merged; ++b) {
                    int i = lc.classes[singles[a]][0], j = lc.classes[singles[b]][0];
                    if (adj[i][j]) continue;
                    remove_from(j);
                    place(j, singles[a]);
                    merged = true;
                }
        }
    }

    SuitableResult result;
    for (int k = 0; k <= delta; ++k) {
        if (lc.classes[k].empty()) continue;
        std::vector<int> cls;
        for (int i : lc.classes[k]) cls.push_back(verts[i]);
        std::sort(cls.begin(), cls.end());
        result.colouring.classes.push_back(std::move(cls));
    }
    result.failing_bullet = validate_suitable(g, dense_set, result.colouring);
    result.ok = result.failing_bullet.empty();
    return result;
}

bool is_very_suitable(const SuitableColouring& sc, int delta, double epsilon) {
    long long singles = 0;
    for (const auto& cls : sc.classes)
        if (cls.size() == 1) ++singles;
    return singles >= static_cast<long long>(delta) - 40LL * k_block_size(delta, epsilon);
}

// --- extension procedures ---------------------------------------------------

namespace {

int smallest_free_colour(const Graph& g, const PartialColouring& f,
                         const std::vector<int>& block) {
    std::vector<char> taken(f.palette_size, 0);
    for (int v : block)
        for (int u : g.neighbours(v)) {
            int c = f.colours[u];
            if (c != kUncoloured) taken[c] = 1;
        }
    for (int c = 0; c < f.palette_size; ++c)
        if (!taken[c]) return c;
    return -1;
}

}  // namespace

ExtendResult extend_over_very_suitable(const Graph& g, const PartialColouring& partial,
                                       const std::vector<int>& dense_set,
                                       const SuitableColouring& sc,
                                       const std::vector<int>& hold_out,
                                       const std::vector<int>& skip) {
    ExtendResult result;
    result.colouring = partial;

    std::vector<char> held(g.vertex_count(), 0), skipped(g.vertex_count(), 0);
    auto singles = sc.singleton_vertices();
    for (int v : hold_out) {
        if (std::find(singles.begin(), singles.end(), v) == singles.end())
            throw std::invalid_argument("hold-out vertex is not in a singleton class");
        held[v] = 1;
    }
    for (int v : skip) skipped[v] = 1;
    for (int v : dense_set)
        if (partial.is_coloured(v))
            throw std::invalid_argument("dense set vertex already coloured in the base colouring");

    // non-singleton classes as monochromatic blocks first
    for (const auto& cls : sc.classes) {
        if (cls.size() < 2) continue;
        std::vector<int> block;
        for (int v : cls)
            if (!skipped[v]) block.push_back(v);
        if (block.empty()) continue;
        int c = smallest_free_colour(g, result.colouring, block);
        if (c < 0) {
            result.error = "no colour available for a monochromatic block";
            return result;
        }
        for (int v : block) result.colouring.colours[v] = c;
    }
    // then singletons outside the hold-out
    for (int v : singles) {
        if (held[v] || skipped[v]) continue;
        int c = smallest_free_colour(g, result.colouring, {v});
        if (c < 0) {
            result.error = "no colour available for a singleton vertex";
            return result;
        }
        result.colouring.colours[v] = c;
    }
    result.ok = true;
    return result;
}

ExtendResult extend_over_not_very_suitable(const Graph& g, const PartialColouring& partial,
                                           const std::vector<int>& dense_set, double epsilon,
                                           const std::vector<int>& skip) {
    ExtendResult result;
    result.colouring = partial;
    int delta = g.max_degree();
    int k_size = k_block_size(delta, epsilon);

    for (int v : dense_set)
        if (partial.is_coloured(v))
            throw std::invalid_argument("dense set vertex already coloured in the base colouring");

    auto suitable = suitable_colouring(g, dense_set);

    // disjoint nonadjacent pairs drawn from the non-singleton classes
    int pairs_wanted = ceil_tol(8.0 * k_size / 3.0);
    std::vector<std::pair<int, int>> pairs;
    for (const auto& cls : suitable.colouring.classes) {
        for (std::size_t i = 0; i + 1 < cls.size(); i += 2) {
            if (static_cast<int>(pairs.size()) == pairs_wanted) break;
            pairs.emplace_back(cls[i], cls[i + 1]);
        }
        if (static_cast<int>(pairs.size()) == pairs_wanted) break;
    }
    if (static_cast<int>(pairs.size()) < pairs_wanted) {
        result.error = "only " + std::to_string(pairs.size()) + " nonadjacent pairs available, need " +
                       std::to_string(pairs_wanted);
        return result;
    }

    std::vector<char> in_pair(g.vertex_count(), 0);
    for (auto [a, b] : pairs) in_pair[a] = in_pair[b] = 1;

    // helpers sized by the construction: |Z| = ceil(Delta/30), |Y| = ceil(Delta/3)
    auto top_by_count = [&](const std::vector<int>& candidates, const std::vector<int>& counts,
                            int want, int floor_count, std::vector<int>& out) {
        std::vector<int> order = candidates;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return counts[a] != counts[b] ? counts[a] > counts[b] : a < b;
        });
        if (static_cast<int>(order.size()) < want) return false;
        order.resize(want);
        for (int v : order)
            if (counts[v] < floor_count) return false;
        out = std::move(order);
        return true;
    };

    std::vector<int> pair_support(g.vertex_count(), 0);
    for (auto [a, b] : pairs)
        for (int v : dense_set)
            if (!in_pair[v] && g.has_edge(v, a) && g.has_edge(v, b)) ++pair_support[v];
    std::vector<int> candidates;
    for (int v : dense_set)
        if (!in_pair[v]) candidates.push_back(v);

    std::vector<int> helper_z;
    if (!top_by_count(candidates, pair_support, ceil_tol(delta / 30.0), k_size, helper_z)) {
        result.error = "helper set Z selection failed its counts";
        return result;
    }
    std::vector<char> in_z(g.vertex_count(), 0);
    for (int v : helper_z) in_z[v] = 1;

    std::vector<int> z_support(g.vertex_count(), 0);
    for (int v : candidates)
        if (!in_z[v])
            for (int u : g.neighbours(v))
                if (in_z[u]) ++z_support[v];
    std::vector<int> y_candidates;
    for (int v : candidates)
        if (!in_z[v]) y_candidates.push_back(v);
    std::vector<int> helper_y;
    if (!top_by_count(y_candidates, z_support, ceil_tol(delta / 3.0), k_size, helper_y)) {
        result.error = "helper set Y selection failed its counts";
        return result;
    }
    std::vector<char> in_y(g.vertex_count(), 0);
    for (int v : helper_y) in_y[v] = 1;

    std::vector<char> skipped(g.vertex_count(), 0);
    for (int v : skip) skipped[v] = 1;

    // colouring order: pairs (monochromatic), D - pairs - Y - Z, then Y, then Z
    for (auto [a, b] : pairs) {
        std::vector<int> block;
        if (!skipped[a]) block.push_back(a);
        if (!skipped[b]) block.push_back(b);
        if (block.empty()) continue;
        int c = smallest_free_colour(g, result.colouring, block);
        if (c < 0) {
            result.error = "no colour available for a nonadjacent pair";
            return result;
        }
        for (int v : block) result.colouring.colours[v] = c;
    }
    auto colour_all = [&](const std::vector<int>& vs, const char* what) {
        for (int v : vs) {
            if (skipped[v] || result.colouring.is_coloured(v)) continue;
            int c = smallest_free_colour(g, result.colouring, {v});
            if (c < 0) {
                result.error = std::string("no colour available while colouring ") + what;
                return false;
            }
            result.colouring.colours[v] = c;
        }
        return true;
    };
    std::vector<int> bulk;
    for (int v : dense_set)
        if (!in_pair[v] && !in_y[v] && !in_z[v]) bulk.push_back(v);
    if (!colour_all(bulk, "the dense-set bulk")) return result;
    if (!colour_all(helper_y, "helper set Y")) return result;
    if (!colour_all(helper_z, "helper set Z")) return result;

    result.ok = true;
    return result;
}

}  // namespace peacekit
