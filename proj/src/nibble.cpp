#include "peacekit/nibble.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "peacekit/dsatur.hpp"
#include "peacekit/rng.hpp"

namespace peacekit {

namespace {

constexpr std::uint64_t kTagActivate = 0xac7;
constexpr std::uint64_t kTagFlip = 0xf11b;
constexpr std::uint64_t kTagTruncate = 0x7c4c;
constexpr std::uint64_t kTagMonitor = 0x30417;
constexpr std::uint64_t kTagStar = 0x57a4;
constexpr std::uint64_t kTagRun = 0x4e1b;

}  // namespace

IdealizedTrace idealized_trace(int delta, double b_const, LogBase log_base) {
    if (delta < 16) throw std::invalid_argument("idealized_trace: delta must be >= 16");
    IdealizedTrace t;
    t.delta = delta;
    t.b_const = b_const;
    t.log_base = log_base;

    double lg = log_b(delta, log_base);
    double lglg = log_b(lg, log_base);
    if (!(lglg > 0)) throw std::invalid_argument("idealized_trace: loglog(delta) not positive");
    t.alpha = 1.0 / (lg * lg);
    t.i_star = static_cast<int>(std::ceil(lg * lg * lglg - 1e-9));
    t.palette = delta + static_cast<int>(std::ceil(b_const * delta / lglg - 1e-9));

    double l = t.palette, g = 0.0, d = delta;
    double lg5 = std::pow(lg, 5.0);
    double floor_bound = 0.9 * b_const * delta / lglg;
    int prev_target = t.palette;
    for (int i = 1; i <= t.i_star + 1; ++i) {
        t.list_size.push_back(l);
        t.good_size.push_back(g);
        t.uncoloured.push_back(d);
        double n_i = t.alpha * d;
        t.activated.push_back(n_i);
        if (l < floor_bound) t.floor_ok = false;

        int target;
        if (i == 1) {
            target = t.palette;
        } else {
            target = static_cast<int>(std::floor(l)) -
                     static_cast<int>(std::ceil(i * static_cast<double>(delta) / lg5 - 1e-9));
            target = std::max(1, std::min(prev_target, target));
        }
        t.list_target.push_back(target);
        prev_target = target;

        double decay = std::pow(1.0 - 1.0 / t.palette, n_i);
        g = g * decay + n_i * l / t.palette;
        l = l * decay;
        d = d - n_i;
    }
    return t;
}

// --- star process ----------------------------------------------------------------

std::uint64_t star_trial_seed(std::uint64_t seed, int trial) {
    return mix_seed(seed, kTagStar, static_cast<std::uint64_t>(trial));
}

StarTrial star_single_trial(int delta, double b_const, std::uint64_t trial_seed,
                            LogBase log_base) {
    IdealizedTrace t = idealized_trace(delta, b_const, log_base);
    int palette = t.palette;

    StarTrial trial;
    std::vector<int> colour(delta + 1, kUncoloured);  // leaves are 1..delta
    std::vector<int> mult(palette, 0);
    int zero_count = palette, one_count = 0, uncoloured = delta;

    for (int i = 1; i <= t.i_star + 1; ++i) {
        trial.list_size.push_back(zero_count);
        trial.good_size.push_back(one_count);
        trial.uncoloured.push_back(uncoloured);
        if (i == t.i_star + 1) break;
        int activated = 0;
        for (int leaf = 1; leaf <= delta; ++leaf) {
            if (colour[leaf] != kUncoloured) continue;
            Rng rng = Rng::stream(trial_seed, kTagActivate, leaf, i);
            if (rng.uniform01() >= t.alpha) continue;
            int c = rng.int_below(palette);
            colour[leaf] = c;
            ++activated;
            --uncoloured;
            int before = mult[c]++;
            if (before == 0) {
                --zero_count;
                ++one_count;
            } else if (before == 1) {
                --one_count;
            }
        }
        trial.activated.push_back(activated);
    }
    return trial;
}

StarStats simulate_star(int delta, double b_const, std::uint64_t seed, int trials,
                        LogBase log_base) {
    if (trials < 1) throw std::invalid_argument("simulate_star: trials must be >= 1");
    IdealizedTrace t = idealized_trace(delta, b_const, log_base);
    std::size_t len = static_cast<std::size_t>(t.i_star) + 1;

    StarStats stats;
    stats.trials = trials;
    std::vector<double> ls(len, 0), ls2(len, 0), gs(len, 0), gs2(len, 0), us(len, 0), as(len, 0);
    for (int trial = 0; trial < trials; ++trial) {
        StarTrial tr = star_single_trial(delta, b_const, star_trial_seed(seed, trial), log_base);
        for (std::size_t i = 0; i < len; ++i) {
            ls[i] += tr.list_size[i];
            ls2[i] += static_cast<double>(tr.list_size[i]) * tr.list_size[i];
            gs[i] += tr.good_size[i];
            gs2[i] += static_cast<double>(tr.good_size[i]) * tr.good_size[i];
            us[i] += tr.uncoloured[i];
            if (i + 1 < len) as[i] += tr.activated[i];
        }
    }
    for (std::size_t i = 0; i < len; ++i) {
        double lm = ls[i] / trials, gm = gs[i] / trials;
        stats.list_mean.push_back(lm);
        stats.good_mean.push_back(gm);
        stats.list_sd.push_back(std::sqrt(std::max(0.0, ls2[i] / trials - lm * lm)));
        stats.good_sd.push_back(std::sqrt(std::max(0.0, gs2[i] / trials - gm * gm)));
        stats.uncoloured_mean.push_back(us[i] / trials);
        stats.activated_mean.push_back(as[i] / trials);
    }
    return stats;
}

// --- engine ----------------------------------------------------------------------

NibbleEngine::NibbleEngine(const Graph& g, const NibbleParams& params,
                           const IdealizedTrace& trace, std::uint64_t run_seed)
    : g_(&g), params_(&params), trace_(&trace), run_seed_(run_seed) {
    n_ = g.vertex_count();
    palette_ = trace.palette;
    words_ = static_cast<std::size_t>((palette_ + 63) / 64);
    alpha_ = trace.alpha;

    colour_.assign(n_, kUncoloured);
    in_mono_.assign(n_, 0);
    frozen_.assign(n_, 0);
    for (int v : params.frozen_vertices) frozen_[v] = 1;

    list_bits_.assign(words_ * n_, 0);
    for (int v = 0; v < n_; ++v) {
        auto* row = &list_bits_[words_ * v];
        for (int c = 0; c < palette_; ++c) row[c / 64] |= 1ULL << (c % 64);
    }
    list_size_.assign(n_, palette_);
    uncoloured_nbrs_.resize(n_);
    for (int v = 0; v < n_; ++v) uncoloured_nbrs_[v] = g.degree(v);
    good_count_.assign(n_, 0);
    bad_count_.assign(n_, 0);

    support_.assign(static_cast<std::size_t>(palette_) * n_, 0);
    for (int c = 0; c < palette_; ++c) {
        auto* row = &support_[static_cast<std::size_t>(c) * n_];
        for (int v = 0; v < n_; ++v) row[v] = static_cast<std::uint16_t>(g.degree(v));
    }
    cnt_.assign(static_cast<std::size_t>(palette_) * n_, 0);
}

void NibbleEngine::apply_list_removal(int v, int c) {
    auto* bits = &list_bits_[words_ * v];
    bits[c / 64] &= ~(1ULL << (c % 64));
    --list_size_[v];
    if (colour_[v] == kUncoloured) {
        auto* row = &support_[static_cast<std::size_t>(c) * n_];
        for (int u : g_->neighbours(v)) --row[u];
    }
}

void NibbleEngine::run_iteration(int iteration, NibbleIterationRow& row) {
    row.iteration = iteration;
    int l_cur = trace_->list_target[iteration - 1];
    int l_next = trace_->list_target[iteration];
    row.sched_target = l_next;
    double delta23 = std::pow(static_cast<double>(trace_->delta), 2.0 / 3.0);
    double p_star = (l_next + delta23) / l_cur;
    row.target_retention = p_star;

    // 1. simultaneous activations and colour draws from the current lists
    std::vector<std::pair<int, int>> pending;
    for (int v = 0; v < n_; ++v) {
        if (colour_[v] != kUncoloured || frozen_[v] || list_size_[v] == 0) continue;
        Rng rng = Rng::stream(run_seed_, kTagActivate, v, iteration);
        if (rng.uniform01() >= alpha_) continue;
        int k = rng.int_below(list_size_[v]);
        // select the k-th set bit of v's list
        const auto* bits = &list_bits_[words_ * v];
        int c = -1;
        for (std::size_t w = 0; w < words_; ++w) {
            int pc = std::popcount(bits[w]);
            if (k >= pc) {
                k -= pc;
                continue;
            }
            std::uint64_t word = bits[w];
            while (k-- > 0) word &= word - 1;
            c = static_cast<int>(w) * 64 + std::countr_zero(word);
            break;
        }
        pending.emplace_back(v, c);
    }
    row.activated = static_cast<long long>(pending.size());

    // 2. equalizing coin flips, decided against start-of-iteration support
    if (!params_->disable_flips) {
        if (p_star < 1.0) {
            double base = 1.0 - alpha_ / l_cur;
            std::vector<double> pow_table(trace_->delta + 1);
            pow_table[0] = 1.0;
            for (int k = 1; k <= trace_->delta; ++k) pow_table[k] = pow_table[k - 1] * base;
            double threshold = std::log(p_star) / std::log(base);  // q > p* iff U < threshold
            std::vector<std::pair<int, int>> removals;
            for (int v = 0; v < n_; ++v) {
                Rng rng = Rng::stream(run_seed_, kTagFlip, v, iteration);
                const auto* bits = &list_bits_[words_ * v];
                const auto* srow = support_.data();
                for (std::size_t w = 0; w < words_; ++w) {
                    std::uint64_t word = bits[w];
                    while (word) {
                        int c = static_cast<int>(w) * 64 + std::countr_zero(word);
                        word &= word - 1;
                        int u_count = srow[static_cast<std::size_t>(c) * n_ + v];
                        if (u_count < threshold) {
                            double q = pow_table[u_count];
                            double x = 1.0 - p_star / q;
                            if (x > 0 && rng.uniform01() < x) removals.emplace_back(v, c);
                        } else {
                            ++row.clamped_pairs;
                        }
                    }
                }
            }
            for (auto [v, c] : removals) apply_list_removal(v, c);
        } else {
            for (int v = 0; v < n_; ++v) row.clamped_pairs += list_size_[v];
        }
    }

    // 3. apply assignments: ownership, uncoloured-degree, colour counts,
    //    and the assigned vertex leaves every support count it was part of
    for (auto [v, c_star] : pending) {
        colour_[v] = c_star;
        auto* crow = &cnt_[static_cast<std::size_t>(c_star) * n_];
        for (int u : g_->neighbours(v)) {
            --uncoloured_nbrs_[u];
            int before = crow[u]++;
            if (before == 0) ++good_count_[u];
            else if (before == 1) --good_count_[u];
        }
        const auto* bits = &list_bits_[words_ * v];
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t word = bits[w];
            while (word) {
                int c = static_cast<int>(w) * 64 + std::countr_zero(word);
                word &= word - 1;
                auto* srow = &support_[static_cast<std::size_t>(c) * n_];
                for (int u : g_->neighbours(v)) --srow[u];
            }
        }
    }

    // same-iteration conflicts join the Bad sets
    std::vector<int> new_mono;
    for (auto [v, c_star] : pending)
        for (int u : g_->neighbours(v))
            if (colour_[u] == c_star) {
                if (!in_mono_[v]) {
                    in_mono_[v] = 1;
                    new_mono.push_back(v);
                }
                if (!in_mono_[u]) {
                    in_mono_[u] = 1;
                    new_mono.push_back(u);
                }
            }
    row.mono_marked = static_cast<long long>(new_mono.size());
    std::vector<int> new_mono_nbrs(params_->monitor_sample > 0 ? n_ : 0, 0);
    for (int w : new_mono)
        for (int x : g_->neighbours(w)) {
            ++bad_count_[x];
            if (!new_mono_nbrs.empty()) ++new_mono_nbrs[x];
        }

    // 4. newly assigned colours leave the neighbouring lists
    for (auto [v, c_star] : pending) {
        auto* srow = &support_[static_cast<std::size_t>(c_star) * n_];
        std::uint64_t mask = 1ULL << (c_star % 64);
        std::size_t word_idx = static_cast<std::size_t>(c_star) / 64;
        for (int u : g_->neighbours(v)) {
            auto& word = list_bits_[words_ * u + word_idx];
            if (!(word & mask)) continue;
            word &= ~mask;
            --list_size_[u];
            if (colour_[u] == kUncoloured)
                for (int x : g_->neighbours(u)) --srow[x];
        }
    }

    // 5. truncation to the schedule; lists already below it stay put
    if (!params_->disable_truncation) {
        for (int v = 0; v < n_; ++v) {
            int excess = list_size_[v] - l_next;
            if (excess <= 0) {
                if (excess < 0) ++row.undershoot_count;
                continue;
            }
            Rng rng = Rng::stream(run_seed_, kTagTruncate, v, iteration);
            while (excess-- > 0) {
                int c;
                do {
                    c = rng.int_below(palette_);
                } while (!list_has(v, c));
                apply_list_removal(v, c);
            }
        }
    }
    row.min_list = palette_;
    row.max_list = 0;
    for (int v = 0; v < n_; ++v) {
        row.min_list = std::min(row.min_list, list_size_[v]);
        row.max_list = std::max(row.max_list, list_size_[v]);
    }
    row.newly_coloured = static_cast<long long>(pending.size());

    // 6. monitors on a sampled vertex set, against the idealized values for
    //    the start of the next iteration
    int delta = trace_->delta;
    double lg = log_b(delta, trace_->log_base);
    row.monitor_a_bound = delta23;
    row.monitor_b_bound = delta / std::pow(lg, 3.0);
    row.monitor_c_bound = delta / std::pow(lg, 4.0);
    double e_budget = (iteration + 1) * delta / std::pow(lg, 3.5);
    row.monitor_e_min_slack = 1e300;
    Rng mon_rng = Rng::stream(run_seed_, kTagMonitor, iteration);
    int samples = std::min(params_->monitor_sample, n_);
    for (int s = 0; s < samples; ++s) {
        int v = params_->monitor_sample >= n_ ? s : mon_rng.int_below(n_);
        double dev_a = std::abs(static_cast<double>(uncoloured_nbrs_[v]) -
                                trace_->uncoloured[iteration]);
        row.monitor_a_max = std::max(row.monitor_a_max, dev_a);
        if (!new_mono_nbrs.empty())
            row.monitor_b_max =
                std::max(row.monitor_b_max, static_cast<double>(new_mono_nbrs[v]));
        // support spread over the colours still on v's list
        int lo = 1 << 30, hi = -1;
        const auto* bits = &list_bits_[words_ * v];
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t word = bits[w];
            while (word) {
                int c = static_cast<int>(w) * 64 + std::countr_zero(word);
                word &= word - 1;
                if (c == colour_[v]) continue;
                int u_count = support_[static_cast<std::size_t>(c) * n_ + v];
                lo = std::min(lo, u_count);
                hi = std::max(hi, u_count);
            }
        }
        if (hi >= 0)
            row.monitor_c_max = std::max(row.monitor_c_max, static_cast<double>(hi - lo));
        double slack = good_count_[v] - (trace_->good_size[iteration] - e_budget);
        row.monitor_e_min_slack = std::min(row.monitor_e_min_slack, slack);
    }
    row.monitor_d_violations = row.undershoot_count;
    row.any_violation = row.monitor_a_max > row.monitor_a_bound ||
                        row.monitor_b_max > row.monitor_b_bound ||
                        row.monitor_c_max > row.monitor_c_bound ||
                        row.monitor_d_violations > 0 || row.monitor_e_min_slack < 0;
}

int NibbleEngine::recompute_uncoloured_neighbours(int v) const {
    int k = 0;
    for (int u : g_->neighbours(v))
        if (colour_[u] == kUncoloured) ++k;
    return k;
}

int NibbleEngine::recompute_good_count(int v) const {
    std::vector<int> freq;
    freq.assign(palette_, 0);
    int good = 0;
    for (int u : g_->neighbours(v)) {
        int c = colour_[u];
        if (c == kUncoloured) continue;
        int before = freq[c]++;
        if (before == 0) ++good;
        else if (before == 1) --good;
    }
    return good;
}

bool NibbleEngine::recompute_in_mono(int v) const {
    int c = colour_[v];
    if (c == kUncoloured) return false;
    for (int u : g_->neighbours(v))
        if (colour_[u] == c) return true;
    return false;
}

int NibbleEngine::recompute_bad_count(int v) const {
    int k = 0;
    for (int u : g_->neighbours(v))
        if (recompute_in_mono(u)) ++k;
    return k;
}

int NibbleEngine::recompute_support(int v, int c) const {
    int k = 0;
    for (int u : g_->neighbours(v))
        if (colour_[u] == kUncoloured && list_has(u, c)) ++k;
    return k;
}

int NibbleEngine::recompute_list_size(int v) const {
    int k = 0;
    const auto* bits = &list_bits_[words_ * v];
    for (std::size_t w = 0; w < words_; ++w) k += std::popcount(bits[w]);
    return k;
}

PartialColouring NibbleEngine::strip_and_extract() const {
    PartialColouring f(n_, palette_);
    for (int v = 0; v < n_; ++v)
        if (colour_[v] != kUncoloured && !in_mono_[v]) f.colours[v] = colour_[v];
    return f;
}

namespace {

// codegree advisory: exact when the two-step walk is affordable, otherwise a
// sample of two-step endpoints
void codegree_advisory(const Graph& g, std::uint64_t seed, NibbleStats& stats) {
    int delta = g.max_degree();
    double lg = std::log(static_cast<double>(delta));
    stats.codegree_recommended = std::sqrt(static_cast<double>(delta)) / std::pow(lg, 8.0);
    long long walk = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        walk += static_cast<long long>(g.degree(v)) * g.degree(v);
    if (walk <= 64'000'000) {
        stats.codegree_observed = max_codegree(g);
        stats.codegree_exact = true;
    } else {
        Rng rng = Rng::stream(seed, 0xc0de67ULL);
        int best = 0;
        for (int s = 0; s < 2000; ++s) {
            int u = rng.int_below(g.vertex_count());
            if (g.degree(u) == 0) continue;
            int w = g.neighbours(u)[rng.int_below(g.degree(u))];
            int v = g.neighbours(w)[rng.int_below(g.degree(w))];
            if (v == u) continue;
            int common = 0;
            for (int x : g.neighbours(u))
                if (g.has_edge(v, x)) ++common;
            best = std::max(best, common);
        }
        stats.codegree_observed = best;
        stats.codegree_exact = false;
    }
    stats.codegree_warning = stats.codegree_observed > stats.codegree_recommended;
}

}  // namespace

NibbleResult nibble_colour(const Graph& g, const NibbleParams& params,
                           const NibbleCallback& after_iteration) {
    NibbleResult result;
    result.trace = idealized_trace(g.max_degree(), params.b_const, params.log_base);
    int attempts = params.policy == NibblePolicy::restart_on_violation
                       ? std::max(1, params.max_restarts)
                       : 1;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        std::uint64_t run_seed = mix_seed(params.seed, kTagRun, attempt);
        NibbleEngine engine(g, params, result.trace, run_seed);
        NibbleStats stats;
        stats.palette = result.trace.palette;
        stats.restarts_used = attempt;
        for (int it = 1; it <= result.trace.i_star; ++it) {
            NibbleIterationRow row;
            engine.run_iteration(it, row);
            stats.violations_seen = stats.violations_seen || row.any_violation;
            stats.rows.push_back(row);
            if (after_iteration) after_iteration(engine, it);
        }
        result.colouring = engine.strip_and_extract();
        stats.coloured = result.colouring.coloured_count();
        int assigned = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (engine.colour_of(v) != kUncoloured) ++assigned;
        stats.stripped = assigned - stats.coloured;
        stats.unique_neighbour_mean = unique_neighbour_mean(g, result.colouring);
        codegree_advisory(g, params.seed, stats);
        result.stats = std::move(stats);
        if (params.policy != NibblePolicy::restart_on_violation ||
            !result.stats.violations_seen)
            break;
    }
    return result;
}

// --- postprocessing -----------------------------------------------------------------

int default_recolour_band(int delta, LogBase log_base) {
    int band = static_cast<int>(std::ceil(4.0 * delta / log_b(delta, log_base) - 1e-9));
    return std::min(band, delta + 1);
}

PostprocessResult postprocess_recolour(const Graph& g, const PartialColouring& f, int c_prime) {
    validate_proper(g, f);
    int delta = g.max_degree();
    PostprocessResult result;
    if (c_prime < 1 || c_prime > delta + 1) {
        result.error = "c_prime must be in [1, Delta+1]";
        return result;
    }

    PartialColouring work = f;
    std::vector<int> targets;
    for (int v = 0; v < g.vertex_count(); ++v) {
        int c = work.colours[v];
        bool in_band = c != kUncoloured && (c < c_prime || c > delta);
        if (in_band) work.colours[v] = kUncoloured;
        if (work.colours[v] == kUncoloured) targets.push_back(v);
    }
    if (!dsatur_extend(g, work, targets, c_prime, 0x9057, 8)) {
        result.error = "recolouring exceeds c_prime colours; try a larger band";
        return result;
    }
    work.palette_size = delta + 1;
    result.colouring = std::move(work);
    result.recoloured = static_cast<int>(targets.size());
    result.ok = true;
    return result;
}

}  // namespace peacekit
