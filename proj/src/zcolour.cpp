#include "peacekit/zcolour.hpp"

#include <algorithm>
#include <cmath>

#include "peacekit/dsatur.hpp"
#include "peacekit/rng.hpp"

namespace peacekit {

std::vector<int> UsableZ::all_vertices() const {
    std::vector<int> out;
    for (const auto& k : k_sets) out.insert(out.end(), k.begin(), k.end());
    out.insert(out.end(), y_set.begin(), y_set.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool UsableZ::contains(int v) const {
    auto all = all_vertices();
    return std::binary_search(all.begin(), all.end(), v);
}

namespace {

struct ZFlags {
    std::vector<char> in_z;
    std::vector<char> in_y;
    std::vector<int> k_index;  // index of the K block containing v, else -1
};

ZFlags flags_of(const Graph& g, const UsableZ& z) {
    ZFlags fl;
    fl.in_z.assign(g.vertex_count(), 0);
    fl.in_y.assign(g.vertex_count(), 0);
    fl.k_index.assign(g.vertex_count(), -1);
    for (std::size_t i = 0; i < z.k_sets.size(); ++i)
        for (int v : z.k_sets[i]) {
            fl.in_z[v] = 1;
            fl.k_index[v] = static_cast<int>(i);
        }
    for (int v : z.y_set) {
        fl.in_z[v] = 1;
        fl.in_y[v] = 1;
    }
    return fl;
}

}  // namespace

std::vector<ZViolation> validate_usable_z(const Graph& g, const UsableZ& z,
                                          const std::vector<char>& big_clique_member) {
    std::vector<ZViolation> out;
    int delta = g.max_degree();
    double eps = z.epsilon;
    int block = k_block_size(delta, eps);
    ZFlags fl = flags_of(g, z);

    // (ii) block sizes, containment, hosts are big disjoint cliques
    std::vector<char> host_seen(g.vertex_count(), 0);
    for (std::size_t i = 0; i < z.k_sets.size(); ++i) {
        const auto& k = z.k_sets[i];
        const auto& host = z.host_cliques[i];
        if (static_cast<int>(k.size()) != block)
            out.push_back({k.empty() ? -1 : k[0], "ii", static_cast<double>(k.size()),
                           static_cast<double>(block)});
        if (3LL * static_cast<long long>(host.size()) < 2LL * delta + 3 || !is_clique(g, host))
            out.push_back({host.empty() ? -1 : host[0], "ii", static_cast<double>(host.size()),
                           (2.0 * delta + 3) / 3.0});
        for (int v : host) {
            if (host_seen[v])
                out.push_back({v, "ii", 0.0, 0.0});  // hosts not disjoint
            host_seen[v] = 1;
        }
        for (int v : k)
            if (std::find(host.begin(), host.end(), v) == host.end())
                out.push_back({v, "ii", 0.0, 0.0});  // K not inside its host
    }

    // (iii) members of a block see few Z vertices outside their own block
    double bound_iii = 20.0 * eps * delta / 9.0;
    for (std::size_t i = 0; i < z.k_sets.size(); ++i)
        for (int v : z.k_sets[i]) {
            int outside = 0;
            for (int u : g.neighbours(v))
                if (fl.in_z[u] && fl.k_index[u] != static_cast<int>(i)) ++outside;
            if (outside > bound_iii)
                out.push_back({v, "iii", static_cast<double>(outside), bound_iii});
        }

    // (iv) and (v)
    double bound_iv_z = 200.0 * eps * delta / 9.0;
    double bound_iv_y = 2.0 * eps * delta;
    double bound_v = 1.5 * eps * delta;
    for (int v = 0; v < g.vertex_count(); ++v) {
        bool tested_iv = fl.in_y[v] || !big_clique_member[v];
        bool tested_v = !big_clique_member[v];
        if (!tested_iv && !tested_v) continue;
        int in_z = 0, in_y = 0;
        for (int u : g.neighbours(v)) {
            if (fl.in_z[u]) ++in_z;
            if (fl.in_y[u]) ++in_y;
        }
        if (tested_iv) {
            if (in_z > bound_iv_z)
                out.push_back({v, "iv-z", static_cast<double>(in_z), bound_iv_z});
            if (in_y > bound_iv_y)
                out.push_back({v, "iv-y", static_cast<double>(in_y), bound_iv_y});
        }
        if (tested_v && in_z < bound_v)
            out.push_back({v, "v", static_cast<double>(in_z), bound_v});
    }
    return out;
}

namespace {

std::vector<int> first_block_of_permutation(const std::vector<int>& host, int block, Rng& rng) {
    std::vector<int> perm = host;
    shuffle(perm, rng);
    perm.resize(block);
    std::sort(perm.begin(), perm.end());
    return perm;
}

std::vector<int> ball2(const Graph& g, int v) {
    std::vector<int> out{v};
    std::vector<char> seen(g.vertex_count(), 0);
    seen[v] = 1;
    for (int u : g.neighbours(v))
        if (!seen[u]) {
            seen[u] = 1;
            out.push_back(u);
        }
    std::size_t first_ring = out.size();
    for (std::size_t i = 1; i < first_ring; ++i)
        for (int w : g.neighbours(out[i]))
            if (!seen[w]) {
                seen[w] = 1;
                out.push_back(w);
            }
    return out;
}

}  // namespace

ZSampleResult sample_usable_z(const Graph& g,
                              const std::vector<std::vector<int>>& host_cliques,
                              const std::vector<std::vector<int>>& known_big_cliques,
                              const ZSampleParams& params) {
    int n = g.vertex_count();
    int delta = g.max_degree();
    int block = k_block_size(delta, params.epsilon);
    double y_prob = 7.0 * params.epsilon / 4.0;

    std::vector<char> big(n, 0);
    for (const auto& clique : known_big_cliques)
        if (is_big_clique_size(static_cast<long long>(clique.size()), delta))
            for (int v : clique) big[v] = 1;

    std::vector<char> in_host(n, 0);
    for (const auto& host : host_cliques)
        for (int v : host) in_host[v] = 1;

    // round counters drive the per-unit randomness streams
    std::vector<int> k_round(host_cliques.size(), 0);
    std::vector<int> y_round(n, 0);

    ZSampleResult result;
    result.z.epsilon = params.epsilon;
    result.z.host_cliques = host_cliques;

    auto rebuild = [&]() {
        result.z.k_sets.clear();
        for (std::size_t i = 0; i < host_cliques.size(); ++i) {
            Rng rng = Rng::stream(params.seed, 0x4b5eULL, i, k_round[i]);
            result.z.k_sets.push_back(first_block_of_permutation(host_cliques[i], block, rng));
        }
        result.z.y_set.clear();
        for (int v = 0; v < n; ++v) {
            if (in_host[v]) continue;
            Rng rng = Rng::stream(params.seed, 0x595eULL, v, y_round[v]);
            if (rng.bernoulli(y_prob)) result.z.y_set.push_back(v);
        }
    };

    rebuild();
    for (int round = 0;; ++round) {
        auto violations = validate_usable_z(g, result.z, big);
        if (violations.empty()) {
            result.ok = true;
            result.rounds_used = round;
            break;
        }
        if (round >= params.max_rounds) {
            result.residual_violations = std::move(violations);
            result.rounds_used = round;
            break;
        }
        // resample the randomness within distance two of the lowest violator
        int violator = violations.front().vertex;
        for (const auto& viol : violations)
            if (viol.vertex >= 0) {
                violator = viol.vertex;
                break;
            }
        if (violator < 0) {  // structural (ii) violation: resample everything
            for (auto& r : k_round) ++r;
            for (auto& r : y_round) ++r;
        } else {
            auto nearby = ball2(g, violator);
            std::vector<char> mark(n, 0);
            for (int u : nearby) mark[u] = 1;
            for (std::size_t i = 0; i < host_cliques.size(); ++i)
                for (int v : host_cliques[i])
                    if (mark[v]) {
                        ++k_round[i];
                        break;
                    }
            for (int u : nearby)
                if (!in_host[u]) ++y_round[u];
        }
        rebuild();
    }

    for (int v = 0; v < n; ++v) {
        if (big[v]) ++result.exempt_vertices;
        else ++result.tested_vertices;
    }
    return result;
}

// --- phase 1 ------------------------------------------------------------------

ComplementResult colour_complement(const Graph& g, const UsableZ& z,
                                   const DenseDecomposition& decomposition,
                                   const std::vector<VerySuitableEntry>& very_suitable,
                                   double epsilon, std::uint64_t seed) {
    ComplementResult result;
    int n = g.vertex_count();
    int delta = g.max_degree();
    int palette = delta + 1 - k_block_size(delta, epsilon);
    if (palette <= 0) {
        result.error = "base palette is empty at this epsilon";
        return result;
    }
    ZFlags fl = flags_of(g, z);
    result.base = PartialColouring(n, palette);

    // sparse part minus Z first
    std::vector<int> sparse_targets;
    std::vector<char> in_dense(n, 0);
    for (const auto& dset : decomposition.dense_sets)
        for (int v : dset) in_dense[v] = 1;
    for (int v = 0; v < n; ++v)
        if (!in_dense[v] && !fl.in_z[v]) sparse_targets.push_back(v);
    if (!dsatur_extend(g, result.base, sparse_targets, palette, mix_seed(seed, 0x5bacULL), 8)) {
        result.error = "sparse part does not fit in the reduced palette";
        return result;
    }

    // dense sets: hold out K_i on the very suitable ones, skip Y everywhere
    std::vector<int> vs_of_dense(decomposition.dense_sets.size(), -1);
    for (std::size_t j = 0; j < very_suitable.size(); ++j)
        vs_of_dense[very_suitable[j].dense_index] = static_cast<int>(j);

    for (std::size_t i = 0; i < decomposition.dense_sets.size(); ++i) {
        const auto& dset = decomposition.dense_sets[i];
        std::vector<int> skip;
        for (int v : dset)
            if (fl.in_y[v]) skip.push_back(v);
        ExtendResult ext;
        if (vs_of_dense[i] >= 0) {
            const auto& entry = very_suitable[vs_of_dense[i]];
            // the K block hosted by this dense set's singleton clique
            std::vector<int> hold_out;
            for (int v : dset)
                if (fl.k_index[v] >= 0) hold_out.push_back(v);
            ext = extend_over_very_suitable(g, result.base, dset, entry.colouring, hold_out, skip);
        } else {
            for (int v : dset)
                if (fl.k_index[v] >= 0) skip.push_back(v);
            ext = extend_over_not_very_suitable(g, result.base, dset, epsilon, skip);
        }
        if (!ext.ok) {
            result.error = "dense set " + std::to_string(i) + ": " + ext.error;
            return result;
        }
        result.base = std::move(ext.colouring);
    }
    result.ok = true;
    return result;
}

// --- phase 2 ------------------------------------------------------------------

namespace {

struct ZAssignment {
    PartialColouring raw;
    std::vector<char> dropped;
};

ZAssignment assign_and_uncolour(const Graph& g, const UsableZ& z, const PartialColouring& base,
                                int block, std::uint64_t seed, const std::vector<int>& k_round,
                                const std::vector<int>& y_round, const ZFlags& fl) {
    ZAssignment out;
    out.raw = base;
    out.raw.palette_size = base.palette_size + block;
    int fresh = base.palette_size;

    for (std::size_t i = 0; i < z.k_sets.size(); ++i) {
        std::vector<int> perm = z.k_sets[i];
        Rng rng = Rng::stream(seed, 0x2c01ULL, i, k_round[i]);
        shuffle(perm, rng);
        for (std::size_t j = 0; j < perm.size(); ++j)
            out.raw.colours[perm[j]] = fresh + static_cast<int>(j);
    }
    for (int v : z.y_set) {
        Rng rng = Rng::stream(seed, 0x2c02ULL, v, y_round[v]);
        out.raw.colours[v] = fresh + rng.int_below(block);
    }

    // asymmetric uncolouring: Y-Y conflicts drop both endpoints, conflicts
    // touching K drop only the K endpoints
    out.dropped.assign(g.vertex_count(), 0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!fl.in_z[v]) continue;
        for (int u : g.neighbours(v)) {
            if (u <= v || !fl.in_z[u]) continue;
            if (out.raw.colours[u] != out.raw.colours[v]) continue;
            bool v_in_k = fl.k_index[v] >= 0, u_in_k = fl.k_index[u] >= 0;
            if (!v_in_k && !u_in_k) {
                out.dropped[v] = out.dropped[u] = 1;
            } else {
                if (v_in_k) out.dropped[v] = 1;
                if (u_in_k) out.dropped[u] = 1;
            }
        }
    }
    return out;
}

ZBadEventReport bad_event_report(const Graph& g, const ZAssignment& za, const ZFlags& fl,
                                 const std::vector<char>& big, double epsilon, int delta,
                                 int fresh) {
    ZBadEventReport rep;
    double ln_delta = std::log(static_cast<double>(delta));
    int crowd_threshold = ceil_tol(ln_delta * ln_delta);
    double eps_delta = epsilon * delta;

    int total_palette = za.raw.palette_size;
    std::vector<int> freq(total_palette, 0);
    std::vector<int> stamp(total_palette, -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (big[v]) continue;
        for (int u : g.neighbours(v)) {
            if (!fl.in_z[u]) continue;
            int c = za.raw.colours[u];
            if (c < fresh) continue;
            if (stamp[c] != v) {
                stamp[c] = v;
                freq[c] = 0;
            }
            ++freq[c];
        }
        int unique_kept = 0, uncoloured = 0, crowded = 0, excluded = 0;
        for (int u : g.neighbours(v)) {
            if (!fl.in_z[u]) continue;
            int c = za.raw.colours[u];
            if (c < fresh) continue;
            bool is_dropped = za.dropped[u];
            bool is_crowded = freq[c] >= crowd_threshold;
            if (freq[c] == 1 && !is_dropped) ++unique_kept;
            if (is_dropped) ++uncoloured;
            if (is_crowded) ++crowded;
            if (is_dropped || is_crowded) ++excluded;
        }
        int score = unique_kept - excluded;
        rep.vertices.push_back(v);
        rep.unique_kept.push_back(unique_kept);
        rep.uncoloured_in_z.push_back(uncoloured);
        rep.crowded.push_back(crowded);
        rep.score.push_back(score);
        if (score < eps_delta) ++rep.bad_events;
    }
    return rep;
}

}  // namespace

ZColourResult colour_z(const Graph& g, const UsableZ& z, const PartialColouring& base,
                       const std::vector<std::vector<int>>& known_big_cliques,
                       const ZColourParams& params) {
    int n = g.vertex_count();
    int delta = g.max_degree();
    int block = k_block_size(delta, params.epsilon);
    ZFlags fl = flags_of(g, z);

    for (int v = 0; v < n; ++v) {
        if (fl.in_z[v] && base.is_coloured(v))
            throw InvalidColouringError("base colouring intersects Z");
        if (!fl.in_z[v] && !base.is_coloured(v))
            throw InvalidColouringError("base colouring does not cover V - Z");
    }
    validate_proper(g, base);

    std::vector<char> big(n, 0);
    for (const auto& clique : known_big_cliques)
        if (is_big_clique_size(static_cast<long long>(clique.size()), delta))
            for (int v : clique) big[v] = 1;

    std::vector<int> k_round(z.k_sets.size(), 0), y_round(n, 0);
    ZColourResult result;

    ZAssignment za = assign_and_uncolour(g, z, base, block, params.seed, k_round, y_round, fl);
    int fresh = base.palette_size;
    int rounds = 0;
    while (true) {
        result.report = bad_event_report(g, za, fl, big, params.epsilon, delta, fresh);
        if (result.report.bad_events == 0) break;
        if (rounds >= params.max_rounds) {
            result.best_effort = true;
            break;
        }
        ++rounds;
        int violator = -1;
        double eps_delta = params.epsilon * delta;
        for (std::size_t i = 0; i < result.report.vertices.size(); ++i)
            if (result.report.score[i] < eps_delta) {
                violator = result.report.vertices[i];
                break;
            }
        auto nearby = ball2(g, violator);
        std::vector<char> mark(n, 0);
        for (int u : nearby) mark[u] = 1;
        for (std::size_t i = 0; i < z.k_sets.size(); ++i)
            for (int v : z.k_sets[i])
                if (mark[v]) {
                    ++k_round[i];
                    break;
                }
        for (int v : z.y_set)
            if (mark[v]) ++y_round[v];
        za = assign_and_uncolour(g, z, base, block, params.seed, k_round, y_round, fl);
    }
    result.rounds_used = rounds;
    result.residual_bad_events = result.report.bad_events;
    result.raw_assignment = za.raw;

    result.after_uncolour = za.raw;
    for (int v = 0; v < n; ++v)
        if (za.dropped[v]) result.after_uncolour.colours[v] = kUncoloured;

    double p = (1.0 - params.epsilon) * delta;
    std::vector<std::vector<int>> exempt;
    for (const auto& clique : known_big_cliques)
        if (2.0 * static_cast<double>(clique.size()) >= 2.0 * (delta + 1) - p)
            exempt.push_back(clique);
    auto completion = greedy_complete(g, result.after_uncolour, p, exempt);
    result.completion_preconditions_ok = completion.preconditions_ok;
    result.colouring = std::move(completion.colouring);
    result.measured_peacefulness = peace_report(g, result.colouring).peacefulness;
    return result;
}

// --- pipeline -------------------------------------------------------------------

ZPipelineResult zcolour_run(const Graph& g, const ZPipelineParams& params) {
    ZPipelineResult result;
    int delta = g.max_degree();

    int d = params.d_override;
    if (d <= 0) {
        d = std::min(default_dense_d(delta, params.epsilon), delta / 100);
        if (d != default_dense_d(delta, params.epsilon)) result.d_was_clamped = true;
    }
    result.clamped_d = d;

    DenseDecomposition decomposition;
    if (d >= 1) {
        auto dres = dense_decompose(g, d);
        decomposition = std::move(dres.decomposition);
    } else {
        // Delta < 100: no admissible d, treat every vertex as sparse
        decomposition.d = 0;
        decomposition.sparse_set.resize(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v) decomposition.sparse_set[v] = v;
        result.d_was_clamped = true;
    }

    std::vector<VerySuitableEntry> very_suitable;
    std::vector<std::vector<int>> host_cliques;
    for (std::size_t i = 0; i < decomposition.dense_sets.size(); ++i) {
        auto sres = suitable_colouring(g, decomposition.dense_sets[i]);
        if (!sres.ok) continue;
        if (!is_very_suitable(sres.colouring, delta, params.epsilon)) continue;
        VerySuitableEntry entry;
        entry.dense_index = static_cast<int>(i);
        entry.host_clique = sres.colouring.singleton_vertices();
        // the singleton clique must be large enough to host a K block
        if (3LL * static_cast<long long>(entry.host_clique.size()) < 2LL * delta + 3) continue;
        if (static_cast<int>(entry.host_clique.size()) < k_block_size(delta, params.epsilon))
            continue;
        entry.colouring = std::move(sres.colouring);
        host_cliques.push_back(entry.host_clique);
        very_suitable.push_back(std::move(entry));
    }

    int big_threshold = static_cast<int>((2LL * delta + 3) / 3 + 1);
    auto known_big = find_large_cliques(g, std::max(1, big_threshold), decomposition.dense_sets);
    for (const auto& host : host_cliques)
        if (is_big_clique_size(static_cast<long long>(host.size()), delta))
            known_big.push_back(host);

    ZSampleParams sp{params.epsilon, params.seed, params.max_rounds};
    result.sample = sample_usable_z(g, host_cliques, known_big, sp);
    result.z_ok = result.sample.ok;

    auto comp = colour_complement(g, result.sample.z, decomposition, very_suitable, params.epsilon,
                                  params.seed);
    result.complement_ok = comp.ok;
    if (!comp.ok) {
        result.complement_error = comp.error;
        return result;
    }

    ZColourParams zp{params.epsilon, params.seed, params.max_rounds};
    result.zcolour = colour_z(g, result.sample.z, comp.base, known_big, zp);
    result.completed = true;
    return result;
}

}  // namespace peacekit
