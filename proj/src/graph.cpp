#include "peacekit/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "peacekit/rng.hpp"

namespace peacekit {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop");
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    for (auto& row : g.adjacency_) {
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end())
            throw std::invalid_argument("duplicate edge");
        g.delta_ = std::max(g.delta_, static_cast<int>(row.size()));
    }
    return g;
}

int Graph::edge_count() const {
    long long total = 0;
    for (const auto& row : adjacency_) total += static_cast<long long>(row.size());
    return static_cast<int>(total / 2);
}

bool Graph::has_edge(int u, int v) const {
    const auto& row = adjacency_[u];
    return std::binary_search(row.begin(), row.end(), v);
}

void Graph::validate() const {
    int delta = 0;
    for (int v = 0; v < vertex_count(); ++v) {
        const auto& row = adjacency_[v];
        delta = std::max(delta, static_cast<int>(row.size()));
        for (std::size_t i = 0; i < row.size(); ++i) {
            int u = row[i];
            if (u < 0 || u >= vertex_count()) throw std::logic_error("neighbour out of range");
            if (u == v) throw std::logic_error("self-loop");
            if (i > 0 && row[i - 1] >= u) throw std::logic_error("adjacency not strictly sorted");
            if (!has_edge(u, v)) throw std::logic_error("asymmetric adjacency");
        }
    }
    if (delta != delta_) throw std::logic_error("cached max degree stale");
}

// --- file I/O -------------------------------------------------------------

Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw GraphParseError(GraphParseErrorKind::MalformedHeader, "empty graph file");
    long long n, m;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m) || (hs >> extra) || n < 0 || m < 0)
            throw GraphParseError(GraphParseErrorKind::MalformedHeader,
                                  "header must be 'n m': got '" + line + "'");
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!std::getline(in, line))
            throw GraphParseError(GraphParseErrorKind::BadEdgeCount,
                                  "expected " + std::to_string(m) + " edges, file ended early");
        std::istringstream es(line);
        long long u, v;
        std::string extra;
        if (!(es >> u >> v) || (es >> extra))
            throw GraphParseError(GraphParseErrorKind::BadEdgeCount,
                                  "bad edge line: '" + line + "'");
        if (u >= v)
            throw GraphParseError(GraphParseErrorKind::AsymmetricEdge,
                                  "edge must list the lower endpoint first: '" + line + "'");
        if (u < 0 || v >= n)
            throw GraphParseError(GraphParseErrorKind::IndexOutOfRange,
                                  "edge endpoint out of range: '" + line + "'");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    while (std::getline(in, line)) {
        if (!line.empty())
            throw GraphParseError(GraphParseErrorKind::BadEdgeCount, "trailing content after edges");
    }
    try {
        return Graph::from_edges(static_cast<int>(n), edges);
    } catch (const std::invalid_argument& e) {
        throw GraphParseError(GraphParseErrorKind::DuplicateEdge, e.what());
    }
}

std::string format_graph(const Graph& g) {
    std::string out;
    out += std::to_string(g.vertex_count());
    out += ' ';
    out += std::to_string(g.edge_count());
    out += '\n';
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v : g.neighbours(u))
            if (u < v) {
                out += std::to_string(u);
                out += ' ';
                out += std::to_string(v);
                out += '\n';
            }
    return out;
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

void save_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    out << format_graph(g);
}

// --- generators -----------------------------------------------------------

namespace {

// One attempt at pairing stubs into a simple delta-regular graph.  Illegal
// pairings (loops, duplicates) are skipped by searching the open tail for a
// workable partner; a stuck tail aborts the attempt and the caller restarts.
bool try_pairing(int n, int delta, Rng& rng, std::vector<std::pair<int, int>>& edges) {
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * delta);
    for (int v = 0; v < n; ++v)
        for (int k = 0; k < delta; ++k) stubs.push_back(v);
    shuffle(stubs, rng);

    std::vector<std::vector<int>> adj(n);
    auto adjacent = [&](int u, int v) {
        const auto& row = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
        int other = adj[u].size() <= adj[v].size() ? v : u;
        return std::find(row.begin(), row.end(), other) != row.end();
    };

    edges.clear();
    std::size_t pos = 0;
    while (pos + 1 < stubs.size()) {
        int u = stubs[pos];
        bool fixed = false;
        for (std::size_t j = pos + 1; j < stubs.size(); ++j) {
            int w = stubs[j];
            if (w != u && !adjacent(u, w)) {
                std::swap(stubs[pos + 1], stubs[j]);
                adj[u].push_back(w);
                adj[w].push_back(u);
                edges.emplace_back(u, w);
                pos += 2;
                fixed = true;
                break;
            }
        }
        if (!fixed) return false;
    }
    return true;
}

// Deterministic fallback for dense cases: circulant start plus double-edge
// swaps.  Keeps delta-regularity exactly and mixes well at any density.
Graph regular_by_swaps(int n, int delta, Rng& rng) {
    // circulant offsets 1..delta/2 (+ n/2 when delta odd; then n is even)
    std::vector<std::pair<int, int>> edges;
    for (int off = 1; off <= delta / 2; ++off)
        for (int v = 0; v < n; ++v) {
            int u = (v + off) % n;
            edges.emplace_back(std::min(v, u), std::max(v, u));
        }
    if (delta % 2 == 1) {
        for (int v = 0; v < n / 2; ++v) edges.emplace_back(v, v + n / 2);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    // bit-matrix membership for O(1) edge queries
    std::vector<std::uint64_t> bits(static_cast<std::size_t>(n) * ((n + 63) / 64), 0);
    std::size_t words = (n + 63) / 64;
    auto test = [&](int u, int v) {
        return (bits[u * words + v / 64] >> (v % 64)) & 1ULL;
    };
    auto set_bit = [&](int u, int v, bool on) {
        auto& w = bits[u * words + v / 64];
        if (on) w |= 1ULL << (v % 64);
        else w &= ~(1ULL << (v % 64));
    };
    for (auto [u, v] : edges) {
        set_bit(u, v, true);
        set_bit(v, u, true);
    }

    long long swaps = 10LL * static_cast<long long>(edges.size());
    for (long long t = 0; t < swaps; ++t) {
        std::size_t i = rng.below(edges.size()), j = rng.below(edges.size());
        if (i == j) continue;
        auto [a, b] = edges[i];
        auto [c, d] = edges[j];
        if (rng.bernoulli(0.5)) std::swap(c, d);
        // propose (a,b),(c,d) -> (a,c),(b,d)
        if (a == c || a == d || b == c || b == d) continue;
        if (test(a, c) || test(b, d)) continue;
        set_bit(a, b, false); set_bit(b, a, false);
        set_bit(c, d, false); set_bit(d, c, false);
        set_bit(a, c, true);  set_bit(c, a, true);
        set_bit(b, d, true);  set_bit(d, b, true);
        edges[i] = {std::min(a, c), std::max(a, c)};
        edges[j] = {std::min(b, d), std::max(b, d)};
    }
    return Graph::from_edges(n, edges);
}

}  // namespace

Graph random_regular(int n, int delta, std::uint64_t seed, int max_restarts) {
    if (delta < 0 || n < 0) throw std::invalid_argument("negative parameters");
    if ((static_cast<long long>(n) * delta) % 2 != 0)
        throw std::invalid_argument("n*delta must be even");
    if (delta >= n && !(delta == 0 && n >= 0))
        throw std::invalid_argument("delta must be smaller than n");
    if (delta == 0) return Graph(n);

    Rng rng = Rng::stream(seed, 0x7265670ULL);
    // Dense regime: stub pairing thrashes, go straight to edge swaps.
    if (delta > n / 4) return regular_by_swaps(n, delta, rng);

    std::vector<std::pair<int, int>> edges;
    for (int attempt = 0; attempt < max_restarts; ++attempt) {
        if (try_pairing(n, delta, rng, edges)) {
            Graph g = Graph::from_edges(n, edges);
            if (g.max_degree() == delta) return g;
        }
    }
    throw std::runtime_error("random_regular: no simple graph after " +
                             std::to_string(max_restarts) + " restarts");
}

Graph regularize_by_doubling(const Graph& g, int delta) {
    if (g.max_degree() > delta)
        throw std::invalid_argument("regularize_by_doubling: delta below max degree");
    Graph host = g;
    while (true) {
        bool regular = true;
        for (int v = 0; v < host.vertex_count() && regular; ++v)
            if (host.degree(v) != delta) regular = false;
        if (regular && host.vertex_count() > 0) return host;
        if (host.vertex_count() == 0) return host;
        long long next_n = 2LL * host.vertex_count();
        if (next_n > (1LL << 26))
            throw std::runtime_error("regularize_by_doubling: host graph too large");
        int n = host.vertex_count();
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v : host.neighbours(u))
                if (u < v) {
                    edges.emplace_back(u, v);
                    edges.emplace_back(u + n, v + n);
                }
        for (int v = 0; v < n; ++v)
            if (host.degree(v) < delta) edges.emplace_back(v, v + n);
        host = Graph::from_edges(2 * n, edges);
    }
}

std::pair<Graph, Bipartition> adversarial_bipartite(int delta, std::uint64_t seed) {
    if (delta < 16) throw std::invalid_argument("adversarial_bipartite: delta must be >= 16");
    double ln = std::log(static_cast<double>(delta));
    int a_size = static_cast<int>(std::floor(static_cast<double>(delta) * delta / std::pow(ln, 1.5)));
    if (a_size <= delta)
        throw std::invalid_argument("adversarial_bipartite: |A| must exceed delta");
    int n = a_size + delta;

    std::vector<std::pair<int, int>> edges;
    std::vector<int> pool(a_size);
    Rng rng = Rng::stream(seed, 0xadefULL);
    for (int b = 0; b < delta; ++b) {
        for (int i = 0; i < a_size; ++i) pool[i] = i;
        // partial Fisher-Yates: first delta entries are a uniform subset
        for (int i = 0; i < delta; ++i) {
            int j = i + rng.int_below(a_size - i);
            std::swap(pool[i], pool[j]);
            edges.emplace_back(pool[i], a_size + b);
        }
    }
    Bipartition bip;
    bip.side_a.resize(a_size);
    for (int i = 0; i < a_size; ++i) bip.side_a[i] = i;
    bip.side_b.resize(delta);
    for (int i = 0; i < delta; ++i) bip.side_b[i] = a_size + i;
    return {Graph::from_edges(n, edges), std::move(bip)};
}

// --- structural queries ---------------------------------------------------

int max_codegree(const Graph& g) {
    int n = g.vertex_count();
    if (n < 2) return 0;
    // Count u-w-v paths: for each u, walk two steps and tally endpoints.
    std::vector<int> count(n, 0);
    std::vector<int> touched;
    int best = 0;
    for (int u = 0; u < n; ++u) {
        touched.clear();
        for (int w : g.neighbours(u))
            for (int v : g.neighbours(w)) {
                if (v <= u) continue;
                if (count[v]++ == 0) touched.push_back(v);
            }
        for (int v : touched) {
            best = std::max(best, count[v]);
            count[v] = 0;
        }
    }
    return best;
}

bool is_clique(const Graph& g, const std::vector<int>& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (!g.has_edge(vs[i], vs[j])) return false;
    return true;
}

std::vector<std::vector<int>> find_large_cliques(const Graph& g, int threshold,
                                                 const std::vector<std::vector<int>>& seed_sets) {
    if (threshold < 1) throw std::invalid_argument("find_large_cliques: threshold must be >= 1");
    int n = g.vertex_count();
    std::vector<char> used(n, 0);
    std::vector<std::vector<int>> cliques;

    auto grow = [&](int seed) -> std::vector<int> {
        std::vector<int> clique{seed};
        std::vector<int> cands;
        for (int u : g.neighbours(seed))
            if (!used[u]) cands.push_back(u);
        while (!cands.empty()) {
            if (static_cast<int>(clique.size() + cands.size()) < threshold) return {};
            // pick the candidate with most neighbours among the candidates
            int best = -1, best_score = -1;
            for (int u : cands) {
                int score = 0;
                for (int w : cands)
                    if (w != u && g.has_edge(u, w)) ++score;
                if (score > best_score) {
                    best_score = score;
                    best = u;
                }
            }
            clique.push_back(best);
            std::vector<int> next;
            for (int w : cands)
                if (w != best && g.has_edge(best, w)) next.push_back(w);
            cands.swap(next);
        }
        return clique;
    };

    auto consider = [&](const std::vector<int>& clique) {
        if (clique.empty() || static_cast<int>(clique.size()) < threshold) return;
        for (int v : clique)
            if (used[v]) return;
        if (!is_clique(g, clique)) return;
        for (int v : clique) used[v] = 1;
        cliques.push_back(clique);
    };

    // caller-provided seed sets first (e.g. dense-decomposition candidates)
    for (const auto& set : seed_sets)
        for (int v : set) {
            if (used[v]) continue;
            consider(grow(v));
            break;
        }

    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.degree(a) != g.degree(b) ? g.degree(a) > g.degree(b) : a < b; });
    for (int v : order) {
        if (used[v] || g.degree(v) + 1 < threshold) continue;
        consider(grow(v));
    }
    for (auto& c : cliques) std::sort(c.begin(), c.end());
    std::sort(cliques.begin(), cliques.end());
    return cliques;
}

}  // namespace peacekit
