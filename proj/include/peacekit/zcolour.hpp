#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "peacekit/colouring.hpp"
#include "peacekit/dense.hpp"
#include "peacekit/graph.hpp"

namespace peacekit {

// True iff a set of this size counts as "large" for exemptions: size > 2*Delta/3 + 1.
inline bool is_big_clique_size(long long size, int delta) { return 3 * size > 2LL * delta + 3; }

// Candidate two-phase split: K-blocks inside host cliques plus a sprinkled set Y.
struct UsableZ {
    std::vector<std::vector<int>> k_sets;        // K_i, one per host clique
    std::vector<std::vector<int>> host_cliques;  // C_i, disjoint verified cliques
    std::vector<int> y_set;
    double epsilon = 0.0;

    std::vector<int> all_vertices() const;
    bool contains(int v) const;  // linear; tests only
};

struct ZViolation {
    int vertex;
    std::string condition;  // "ii", "iii", "iv-z", "iv-y", "v"
    double value;
    double bound;
};

// Validators for conditions (ii)-(v).  `big_clique_member` marks vertices of
// known cliques of size exceeding 2*Delta/3+1 (heuristic, so possibly a
// subset of the truth; missing members only means more vertices get tested).
std::vector<ZViolation> validate_usable_z(const Graph& g, const UsableZ& z,
                                          const std::vector<char>& big_clique_member);

struct ZSampleParams {
    double epsilon = 1.0 / 8001.0;
    std::uint64_t seed = 0;
    int max_rounds = 200;
};

struct ZSampleResult {
    UsableZ z;
    bool ok = false;
    std::vector<ZViolation> residual_violations;
    int rounds_used = 0;
    int tested_vertices = 0;  // vertices subject to (iv)/(v)
    int exempt_vertices = 0;  // vertices excused by known big cliques
};

// Samples K_i as the first ceil(20*eps*Delta) entries of a uniform
// permutation of C_i and Y by independent 7*eps/4 coin flips, then locally
// resamples around violating vertices (distance <= 2) until the validators
// pass or rounds run out.
ZSampleResult sample_usable_z(const Graph& g,
                              const std::vector<std::vector<int>>& host_cliques,
                              const std::vector<std::vector<int>>& known_big_cliques,
                              const ZSampleParams& params);

// --- phase 1: colour G - Z --------------------------------------------------

struct ComplementResult {
    PartialColouring base;  // proper on V - Z, palette Delta+1-ceil(20*eps*Delta)
    bool ok = false;
    std::string error;
};

struct VerySuitableEntry {
    int dense_index;            // index into decomposition.dense_sets
    SuitableColouring colouring;
    std::vector<int> host_clique;  // union of the singleton classes
};

ComplementResult colour_complement(const Graph& g, const UsableZ& z,
                                   const DenseDecomposition& decomposition,
                                   const std::vector<VerySuitableEntry>& very_suitable,
                                   double epsilon, std::uint64_t seed);

// --- phase 2: colour Z with a fresh palette ----------------------------------

struct ZBadEventReport {
    std::vector<int> vertices;        // tested vertices (outside known big cliques)
    std::vector<int> unique_kept;     // neighbours in Z keeping a colour unique in N(v)
    std::vector<int> uncoloured_in_z; // neighbours in Z uncoloured by the conflict rule
    std::vector<int> crowded;         // neighbours in Z whose colour is heavily repeated in N(v) cap Z
    std::vector<int> score;           // unique_kept - |uncoloured union crowded|
    int bad_events = 0;               // score < eps*Delta
};

struct ZColourParams {
    double epsilon = 1.0 / 8001.0;
    std::uint64_t seed = 0;
    int max_rounds = 200;
};

struct ZColourResult {
    PartialColouring colouring;       // total, palette Delta+1
    PartialColouring raw_assignment;  // Z colours before the uncolouring rule (tests)
    PartialColouring after_uncolour;  // proper-partial state handed to completion
    ZBadEventReport report;
    bool best_effort = false;
    int rounds_used = 0;
    int residual_bad_events = 0;
    int measured_peacefulness = 0;
    bool completion_preconditions_ok = false;
};

// Permutation colours for each K_i, uniform colours for Y, asymmetric
// uncolouring (Y-Y conflicts drop both ends, conflicts touching K drop only
// the K ends), resampling of bad events, and greedy completion at
// p = (1-eps)*Delta with big-clique exemptions.
ZColourResult colour_z(const Graph& g, const UsableZ& z, const PartialColouring& base,
                       const std::vector<std::vector<int>>& known_big_cliques,
                       const ZColourParams& params);

// --- full pipeline ------------------------------------------------------------

struct ZPipelineParams {
    double epsilon = 1.0 / 8001.0;
    std::uint64_t seed = 0;
    int max_rounds = 200;
    int d_override = 0;  // 0: use min(default_dense_d, Delta/100)
};

struct ZPipelineResult {
    bool z_ok = false;
    bool complement_ok = false;
    bool completed = false;
    ZSampleResult sample;
    std::string complement_error;
    ZColourResult zcolour;
    int clamped_d = 0;
    bool d_was_clamped = false;
};

ZPipelineResult zcolour_run(const Graph& g, const ZPipelineParams& params);

}  // namespace peacekit
