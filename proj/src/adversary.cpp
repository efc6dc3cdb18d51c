#include "peacekit/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "peacekit/rng.hpp"

namespace peacekit {

UniquenessAudit audit_uniqueness(const Graph& g, const Bipartition& bip,
                                 const PartialColouring& f) {
    if (!f.is_total()) throw InvalidColouringError("audit_uniqueness requires a total colouring");
    validate_proper(g, f);

    UniquenessAudit audit;
    std::vector<int> freq(f.palette_size, 0);
    std::vector<int> stamp(f.palette_size, -1);
    int idx = 0;
    for (int b : bip.side_b) {
        for (int u : g.neighbours(b)) {
            int c = f.colours[u];
            if (stamp[c] != b) {
                stamp[c] = b;
                freq[c] = 0;
            }
            ++freq[c];
        }
        int cb = 0;
        for (int u : g.neighbours(b)) {
            int c = f.colours[u];
            if (freq[c] == 1) ++cb;
        }
        audit.cb.push_back(cb);
        audit.m_total += cb;
        if (audit.witness_b == -1 || cb < audit.min_cb) {
            audit.min_cb = cb;
            audit.witness_b = b;
        }
        ++idx;
    }
    return audit;
}

long long recount_m_by_sorting(const Graph& g, const Bipartition& bip,
                               const PartialColouring& f) {
    long long total = 0;
    for (int b : bip.side_b) {
        std::vector<int> colours;
        colours.reserve(g.degree(b));
        for (int u : g.neighbours(b)) colours.push_back(f.colours[u]);
        std::sort(colours.begin(), colours.end());
        for (std::size_t i = 0; i < colours.size();) {
            std::size_t j = i;
            while (j < colours.size() && colours[j] == colours[i]) ++j;
            if (j - i == 1) ++total;
            i = j;
        }
    }
    return total;
}

SubsetAudit audit_subsets(const Graph& g, const Bipartition& bip, int max_size, int samples,
                          std::uint64_t seed) {
    if (max_size < 1) throw std::invalid_argument("audit_subsets: max_size must be >= 1");
    SubsetAudit audit;
    int delta = g.max_degree();
    double ln = std::log(static_cast<double>(delta));
    audit.bound = (std::exp(-1.0) + 1.0 / (3.0 * std::pow(ln, 1.0 / 9.0))) *
                  static_cast<double>(bip.side_b.size());

    std::vector<int> pool = bip.side_a;
    std::vector<int> hits(g.vertex_count(), 0);
    std::vector<int> touched;
    Rng rng = Rng::stream(seed, 0x5b5e7ULL);

    for (int size = 1; size <= max_size; ++size) {
        SubsetAuditRow row;
        row.subset_size = size;
        row.samples = samples;
        long long sum = 0;
        for (int s = 0; s < samples; ++s) {
            // uniform subset of this size via partial Fisher-Yates
            for (int i = 0; i < size; ++i) {
                int j = i + rng.int_below(static_cast<int>(pool.size()) - i);
                std::swap(pool[i], pool[j]);
            }
            touched.clear();
            for (int i = 0; i < size; ++i)
                for (int b : g.neighbours(pool[i])) {
                    if (hits[b]++ == 0) touched.push_back(b);
                }
            int exactly_one = 0;
            for (int b : touched) {
                if (hits[b] == 1) ++exactly_one;
                hits[b] = 0;
            }
            row.max_exactly_one = std::max(row.max_exactly_one, exactly_one);
            sum += exactly_one;
            if (exactly_one > audit.bound) ++row.exceed_bound;
        }
        row.mean_exactly_one = static_cast<double>(sum) / samples;
        audit.rows.push_back(row);
    }
    return audit;
}

}  // namespace peacekit
