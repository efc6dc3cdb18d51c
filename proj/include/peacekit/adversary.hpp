#pragma once

#include <cstdint>
#include <vector>

#include "peacekit/colouring.hpp"
#include "peacekit/graph.hpp"

namespace peacekit {

// Colour-class uniqueness audit over the B side of a bipartition: for each
// b, c_b counts the colour classes hitting N(b) exactly once; M sums them.
struct UniquenessAudit {
    long long m_total = 0;       // sum over b of c_b
    int min_cb = 0;
    int witness_b = -1;          // attains min_cb
    std::vector<int> cb;         // aligned with bip.side_b
};

UniquenessAudit audit_uniqueness(const Graph& g, const Bipartition& bip,
                                 const PartialColouring& f);

// Independent recount without histograms (sort neighbours by colour and count
// runs of length one); used as the dual-implementation check.
long long recount_m_by_sorting(const Graph& g, const Bipartition& bip, const PartialColouring& f);

// Sampled subset audit: for random S in A of each size, the number of B
// vertices adjacent to exactly one member of S, against the reference bound
// (1/e + 1/(3 ln^{1/9} Delta)) * |B|.
struct SubsetAuditRow {
    int subset_size = 0;
    int samples = 0;
    int max_exactly_one = 0;
    double mean_exactly_one = 0.0;
    int exceed_bound = 0;  // samples above the reference bound
};

struct SubsetAudit {
    double bound = 0.0;
    std::vector<SubsetAuditRow> rows;
};

SubsetAudit audit_subsets(const Graph& g, const Bipartition& bip, int max_size, int samples,
                          std::uint64_t seed);

}  // namespace peacekit
