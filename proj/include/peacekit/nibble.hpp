#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "peacekit/colouring.hpp"
#include "peacekit/graph.hpp"

namespace peacekit {

enum class LogBase { natural, binary };

inline double log_b(double x, LogBase base) {
    double ln = std::log(x);
    return base == LogBase::natural ? ln : ln / std::log(2.0);
}

// --- idealized recurrences ----------------------------------------------------

// Sequences driven by l_{i+1} = l_i (1 - 1/l_1)^{n_i},
// g_{i+1} = g_i (1 - 1/l_1)^{n_i} + n_i l_i / l_1, D_{i+1} = D_i - n_i,
// n_i = alpha D_i, with alpha = 1/log^2(Delta) and
// i* = ceil(log^2(Delta) * loglog(Delta)).  Index 0 holds iteration 1.
struct IdealizedTrace {
    int delta = 0;
    double b_const = 0.0;
    LogBase log_base = LogBase::natural;
    double alpha = 0.0;
    int i_star = 0;
    int palette = 0;  // l_1 = Delta + ceil(B*Delta/loglog(Delta))

    std::vector<double> list_size;    // l_i
    std::vector<double> good_size;    // g_i
    std::vector<double> uncoloured;   // D_i
    std::vector<double> activated;    // n_i
    std::vector<int> list_target;     // integer schedule l'_i
    bool floor_ok = true;             // l_i >= 0.9*B*Delta/loglog(Delta) throughout
};

IdealizedTrace idealized_trace(int delta, double b_const, LogBase log_base = LogBase::natural);

// --- star process --------------------------------------------------------------

// Monte Carlo of the idealized process on a star with `delta` leaves: each
// uncoloured leaf activates with probability alpha and takes a uniform colour
// from the full palette.  Index 0 holds the state at the start of iteration 1.
struct StarStats {
    int trials = 0;
    std::vector<double> list_mean, list_sd;
    std::vector<double> good_mean, good_sd;
    std::vector<double> uncoloured_mean;
    std::vector<double> activated_mean;
};

// Exact sequences of one trial; states indexed by iteration start (0 holds
// iteration 1), `activated` by iteration.
struct StarTrial {
    std::vector<int> list_size, good_size, uncoloured;
    std::vector<int> activated;
};

StarTrial star_single_trial(int delta, double b_const, std::uint64_t trial_seed,
                            LogBase log_base = LogBase::natural);

StarStats simulate_star(int delta, double b_const, std::uint64_t seed, int trials,
                        LogBase log_base = LogBase::natural);

// Per-trial seed derivation (shared with the star-consistency tests).
std::uint64_t star_trial_seed(std::uint64_t seed, int trial);

// --- main procedure -------------------------------------------------------------

enum class NibblePolicy { monitor_only, restart_on_violation };

struct NibbleParams {
    double b_const = 4.0;
    std::uint64_t seed = 0;
    LogBase log_base = LogBase::natural;
    NibblePolicy policy = NibblePolicy::monitor_only;
    int max_restarts = 3;
    int monitor_sample = 64;  // vertices sampled per iteration for (A)-(E)
    // test hooks
    bool disable_truncation = false;
    bool disable_flips = false;
    std::vector<int> frozen_vertices;  // never activated
};

struct NibbleIterationRow {
    int iteration = 0;  // 1-based
    long long activated = 0;
    long long newly_coloured = 0;
    long long mono_marked = 0;     // vertices newly in monochromatic edges
    int sched_target = 0;          // l'_{i+1} aimed for by truncation
    int min_list = 0, max_list = 0;
    long long undershoot_count = 0;  // lists below the schedule after truncation
    long long clamped_pairs = 0;     // (v,c) pairs with the flip clamped at x=0
    double target_retention = 0.0;   // p*_i
    // monitor measurements over the sampled vertices, with their reference bounds
    double monitor_a_max = 0.0, monitor_a_bound = 0.0;
    double monitor_b_max = 0.0, monitor_b_bound = 0.0;
    double monitor_c_max = 0.0, monitor_c_bound = 0.0;
    long long monitor_d_violations = 0;
    double monitor_e_min_slack = 0.0;  // min over sample of Good_v - (g_i - i*Delta/log^{7/2})
    bool any_violation = false;
};

struct NibbleStats {
    std::vector<NibbleIterationRow> rows;
    int palette = 0;
    int coloured = 0;
    int stripped = 0;  // conflict vertices uncoloured at the end
    int restarts_used = 0;
    bool violations_seen = false;
    double unique_neighbour_mean = 0.0;  // on the final proper partial colouring
    // codegree advisory (the hypothesis behind the procedure; warning only)
    double codegree_recommended = 0.0;  // sqrt(Delta)/log^8(Delta)
    int codegree_observed = 0;          // exact on small graphs, sampled on large
    bool codegree_exact = false;
    bool codegree_warning = false;
};

struct NibbleResult {
    PartialColouring colouring;  // proper partial, palette l_1
    NibbleStats stats;
    IdealizedTrace trace;
};

class NibbleEngine;
using NibbleCallback = std::function<void(const NibbleEngine&, int iteration)>;

NibbleResult nibble_colour(const Graph& g, const NibbleParams& params,
                           const NibbleCallback& after_iteration = {});

// Engine exposed for the bookkeeping oracle: incremental state is public and
// every tracked quantity can be recomputed from scratch off (colours, lists).
class NibbleEngine {
public:
    NibbleEngine(const Graph& g, const NibbleParams& params, const IdealizedTrace& trace,
                 std::uint64_t run_seed);

    void run_iteration(int iteration, NibbleIterationRow& row);

    const Graph& graph() const { return *g_; }
    const IdealizedTrace& trace() const { return *trace_; }
    int palette() const { return palette_; }

    // incremental state
    int colour_of(int v) const { return colour_[v]; }
    bool in_mono(int v) const { return in_mono_[v] != 0; }
    int list_size(int v) const { return list_size_[v]; }
    bool list_has(int v, int c) const {
        return (list_bits_[static_cast<std::size_t>(v) * words_ + c / 64] >> (c % 64)) & 1ULL;
    }
    int uncoloured_neighbours(int v) const { return uncoloured_nbrs_[v]; }
    int good_count(int v) const { return good_count_[v]; }
    int bad_count(int v) const { return bad_count_[v]; }
    int support(int v, int c) const {
        return support_[static_cast<std::size_t>(c) * n_ + v];
    }
    int colour_multiplicity(int v, int c) const {
        return cnt_[static_cast<std::size_t>(c) * n_ + v];
    }

    // from-scratch recomputation (the oracle side of the bookkeeping checks)
    int recompute_uncoloured_neighbours(int v) const;
    int recompute_good_count(int v) const;
    int recompute_bad_count(int v) const;
    int recompute_support(int v, int c) const;
    int recompute_list_size(int v) const;
    bool recompute_in_mono(int v) const;

    PartialColouring strip_and_extract() const;

private:
    void apply_list_removal(int v, int c);

    const Graph* g_;
    const NibbleParams* params_;
    const IdealizedTrace* trace_;
    std::uint64_t run_seed_;
    int n_ = 0, palette_ = 0;
    std::size_t words_ = 0;
    double alpha_ = 0.0;

    std::vector<int> colour_;
    std::vector<char> in_mono_;
    std::vector<char> frozen_;
    std::vector<std::uint64_t> list_bits_;
    std::vector<int> list_size_;
    std::vector<int> uncoloured_nbrs_;
    std::vector<int> good_count_;
    std::vector<int> bad_count_;
    std::vector<std::uint16_t> support_;  // [c * n + v]
    std::vector<std::uint16_t> cnt_;      // [c * n + v]
};

// --- postprocessing ---------------------------------------------------------------

struct PostprocessResult {
    PartialColouring colouring;  // total, palette Delta+1
    bool ok = false;
    std::string error;
    int recoloured = 0;
};

// Uncolours the bands [0, c_prime) and [Delta+1, palette), then recolours
// everything uncoloured inside [0, c_prime) with saturation-order greedy.
PostprocessResult postprocess_recolour(const Graph& g, const PartialColouring& f, int c_prime);

// Default low-band width for postprocessing.
int default_recolour_band(int delta, LogBase log_base = LogBase::natural);

}  // namespace peacekit
