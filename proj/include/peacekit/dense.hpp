#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "peacekit/colouring.hpp"
#include "peacekit/graph.hpp"

namespace peacekit {

// ceil with a tolerance for formula values that land exactly on integers
// (e.g. 20 * (1/40) * 200) but carry floating noise.
inline int ceil_tol(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

// |K_i| in the usable-set machinery.
inline int k_block_size(int delta, double epsilon) { return ceil_tol(20.0 * epsilon * delta); }

// Default decomposition parameter: d = 4 * ceil(20 * eps * Delta).
inline int default_dense_d(int delta, double epsilon) { return 4 * k_block_size(delta, epsilon); }

struct DenseDecomposition {
    std::vector<std::vector<int>> dense_sets;
    std::vector<int> sparse_set;
    int d = 0;
};

// Number of edges inside G[N(v)] for every v.
std::vector<long long> neighbourhood_edge_counts(const Graph& g);

// v is d-dense iff |E(G[N(v)])| >= C(Delta,2) - d*Delta.
bool is_d_dense(long long nbhd_edges, int delta, int d);

// Exact validators for properties (a) size bounds, (b) the 3*Delta/4
// membership rule for all (v, D_i) pairs, (c) sparsity of S.  Empty result
// means the decomposition is valid.
std::vector<std::string> validate_decomposition(const Graph& g, const DenseDecomposition& dd);

struct DenseDecomposeResult {
    DenseDecomposition decomposition;
    bool ok = false;
    std::vector<std::string> failures;
};

// Fixpoint construction seeded from closed neighbourhoods of d-dense
// vertices; the validators, not the construction, are the contract.
// Requires 1 <= d <= Delta/100.
DenseDecomposeResult dense_decompose(const Graph& g, int d);

// --- suitable colourings ----------------------------------------------------

struct SuitableColouring {
    std::vector<std::vector<int>> classes;  // partition of the dense set

    std::vector<int> singleton_vertices() const {
        std::vector<int> out;
        for (const auto& cls : classes)
            if (cls.size() == 1) out.push_back(cls[0]);
        return out;
    }
};

struct SuitableResult {
    SuitableColouring colouring;
    bool ok = false;
    std::string failing_bullet;  // first validator bullet that failed, if any
};

// Validator for the four suitability bullets; empty string means valid.
std::string validate_suitable(const Graph& g, const std::vector<int>& dense_set,
                              const SuitableColouring& sc);

// Local search: greedy start, then sum-of-squares descent moves (extract to a
// free colour, relocate, merge/extract compounds), then nonadjacent-singleton
// merging; capped at |D|^2 move applications.
SuitableResult suitable_colouring(const Graph& g, const std::vector<int>& dense_set);

bool is_very_suitable(const SuitableColouring& sc, int delta, double epsilon);

// --- extension procedures ---------------------------------------------------

struct ExtendResult {
    PartialColouring colouring;
    bool ok = false;
    std::string error;
};

// Extends a proper partial colouring on V' (disjoint from the dense set) over
// dense_set minus the hold-out J: non-singleton classes first as
// monochromatic blocks, then singletons outside J.  Vertices in `skip` are
// left uncoloured.  Never recolours V'.
ExtendResult extend_over_very_suitable(const Graph& g, const PartialColouring& partial,
                                       const std::vector<int>& dense_set,
                                       const SuitableColouring& sc, const std::vector<int>& hold_out,
                                       const std::vector<int>& skip = {});

// Extension for dense sets without a very suitable colouring: selects
// nonadjacent pairs and auxiliary sets sized by epsilon, colours pairs
// monochromatically, then the remainder, then the auxiliary sets.
ExtendResult extend_over_not_very_suitable(const Graph& g, const PartialColouring& partial,
                                           const std::vector<int>& dense_set, double epsilon,
                                           const std::vector<int>& skip = {});

}  // namespace peacekit
