#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "peacekit/json_io.hpp"
#include "peacekit/oneshot.hpp"
#include "peacekit/oracle.hpp"
#include "peacekit/sweep.hpp"

using namespace peacekit;

int main(int argc, char** argv) {
    CLI::App app{"peacekit: peaceful-colouring toolkit"};
    app.require_subcommand(1);

    std::uint64_t global_seed = 0;
    std::string log_base_name = "natural";
    int threads = 1;
    app.add_option("--seed", global_seed, "global seed (subcommand --seed overrides)");
    app.add_option("--log-base", log_base_name, "natural|binary")
        ->check(CLI::IsMember({"natural", "binary"}));
    app.add_option("--threads", threads, "worker threads for sweep");

    auto log_base = [&]() {
        return log_base_name == "binary" ? LogBase::binary : LogBase::natural;
    };

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph");
    std::string gen_family = "regular", gen_out = "graph.txt", gen_bip_out;
    int gen_n = 100, gen_delta = 8;
    std::uint64_t gen_seed = 0;
    gen->add_option("--family", gen_family, "regular|complete|adversarial")
        ->check(CLI::IsMember({"regular", "complete", "adversarial"}));
    gen->add_option("--n", gen_n);
    gen->add_option("--delta", gen_delta);
    gen->add_option("--seed", gen_seed);
    gen->add_option("--out", gen_out)->required();
    gen->add_option("--bip-out", gen_bip_out, "bipartition JSON (adversarial only)");

    // verify
    auto* verify = app.add_subcommand("verify", "peacefulness report for a colouring");
    std::string ver_graph, ver_colouring, ver_out;
    double ver_p = -1.0;
    verify->add_option("--graph", ver_graph)->required();
    verify->add_option("--colouring", ver_colouring)->required();
    verify->add_option("--p", ver_p, "also test p-peacefulness at this p");
    verify->add_option("--out", ver_out, "write the report JSON here (default stdout)");

    // oracle
    auto* orc = app.add_subcommand("oracle", "exact minimum peacefulness on a tiny graph");
    std::string orc_graph, orc_out;
    int orc_c = 0;
    orc->add_option("--graph", orc_graph)->required();
    orc->add_option("--colours", orc_c, "palette size")->required();
    orc->add_option("--out", orc_out);

    // oneshot
    auto* one = app.add_subcommand("oneshot", "one-shot colourer");
    std::string one_graph, one_out = "oneshot.json";
    double one_mu = 0.5;
    long long one_rounds = -1;
    std::uint64_t one_seed = 0;
    one->add_option("--graph", one_graph)->required();
    one->add_option("--mu", one_mu);
    one->add_option("--seed", one_seed);
    one->add_option("--max-rounds", one_rounds);
    one->add_option("--out", one_out);

    // zcolour
    auto* zc = app.add_subcommand("zcolour", "two-phase usable-set colourer");
    std::string zc_graph, zc_out = "zcolour.json";
    double zc_eps = 1.0 / 8001.0;
    int zc_rounds = 200;
    std::uint64_t zc_seed = 0;
    zc->add_option("--graph", zc_graph)->required();
    zc->add_option("--epsilon", zc_eps);
    zc->add_option("--seed", zc_seed);
    zc->add_option("--max-rounds", zc_rounds);
    zc->add_option("--out", zc_out);

    // nibble-run
    auto* nib = app.add_subcommand("nibble-run", "iterative nibble colourer");
    std::string nib_graph, nib_out = "nibble.json", nib_policy = "monitor-only";
    double nib_b = 4.0;
    int nib_monitor = 64, nib_cprime = 0, nib_restarts = 3;
    bool nib_post = false;
    std::uint64_t nib_seed = 0;
    nib->add_option("--graph", nib_graph)->required();
    nib->add_option("--b-const", nib_b);
    nib->add_option("--seed", nib_seed);
    nib->add_option("--policy", nib_policy)
        ->check(CLI::IsMember({"monitor-only", "restart-on-violation"}));
    nib->add_option("--max-restarts", nib_restarts);
    nib->add_option("--monitor-sample", nib_monitor);
    nib->add_flag("--postprocess", nib_post, "recolour into the low band afterwards");
    nib->add_option("--c-prime", nib_cprime, "low band width (default 4*Delta/log(Delta))");
    nib->add_option("--out", nib_out);

    // star-sim
    auto* star = app.add_subcommand("star-sim", "idealized star process");
    int star_delta = 20000, star_trials = 200;
    double star_b = 4.0;
    std::uint64_t star_seed = 0;
    std::string star_out;
    star->add_option("--delta", star_delta);
    star->add_option("--b-const", star_b);
    star->add_option("--trials", star_trials);
    star->add_option("--seed", star_seed);
    star->add_option("--out", star_out);

    // trace
    auto* trc = app.add_subcommand("trace", "idealized recurrences");
    int trc_delta = 20000;
    double trc_b = 4.0;
    std::string trc_out;
    trc->add_option("--delta", trc_delta);
    trc->add_option("--b-const", trc_b);
    trc->add_option("--out", trc_out);

    // audit
    auto* aud = app.add_subcommand("audit", "uniqueness/subset audits on a bipartite graph");
    std::string aud_graph, aud_bip, aud_colouring, aud_out;
    int aud_max_size = 0, aud_samples = 100;
    std::uint64_t aud_seed = 0;
    aud->add_option("--graph", aud_graph)->required();
    aud->add_option("--bipartition", aud_bip)->required();
    aud->add_option("--colouring", aud_colouring, "audit colour-class uniqueness of this colouring");
    aud->add_option("--max-size", aud_max_size, "subset audit sizes 1..max (0: skip)");
    aud->add_option("--samples", aud_samples);
    aud->add_option("--seed", aud_seed);
    aud->add_option("--out", aud_out);

    // sweep
    auto* swp = app.add_subcommand("sweep", "run an experiment config");
    std::string swp_config;
    swp->add_option("--config", swp_config)->required();

    CLI11_PARSE(app, argc, argv);

    auto emit = [&](const json& j, const std::string& path) {
        if (path.empty()) std::cout << dump_json(j);
        else write_json_file(j, path);
    };

    try {
        if (*gen) {
            std::uint64_t seed = gen->count("--seed") ? gen_seed : global_seed;
            if (gen_family == "adversarial") {
                auto [g, bip] = adversarial_bipartite(gen_delta, seed);
                save_graph(g, gen_out);
                if (!gen_bip_out.empty()) write_json_file(bipartition_to_json(bip), gen_bip_out);
            } else if (gen_family == "complete") {
                std::vector<std::pair<int, int>> edges;
                for (int i = 0; i < gen_n; ++i)
                    for (int j = i + 1; j < gen_n; ++j) edges.emplace_back(i, j);
                save_graph(Graph::from_edges(gen_n, edges), gen_out);
            } else {
                save_graph(random_regular(gen_n, gen_delta, seed), gen_out);
            }
        } else if (*verify) {
            Graph g = load_graph(ver_graph);
            PartialColouring f = load_colouring(ver_colouring);
            PeaceReport rep = peace_report(g, f);
            json j = peace_report_to_json(rep);
            if (ver_p >= 0) j["p_peaceful"] = f.is_total() && rep.peacefulness <= ver_p;
            emit(j, ver_out);
        } else if (*orc) {
            Graph g = load_graph(orc_graph);
            auto res = min_peacefulness_exact(g, orc_c);
            emit(json{{"p_star", res.p_star},
                      {"witness", colouring_to_json(res.witness)},
                      {"nodes_visited", res.nodes_visited}},
                 orc_out);
        } else if (*one) {
            Graph g = load_graph(one_graph);
            OneShotParams p;
            p.mu = one_mu;
            p.seed = one->count("--seed") ? one_seed : global_seed;
            p.max_resample_rounds = one_rounds;
            auto res = oneshot_colour(g, p);
            emit(json{{"colouring", colouring_to_json(res.colouring)},
                      {"rounds_used", res.stats.rounds_used},
                      {"residual_bad_events", res.stats.residual_bad_events},
                      {"best_effort", res.stats.best_effort},
                      {"palette", res.stats.palette_size},
                      {"peacefulness", res.stats.measured_peacefulness}},
                 one_out);
        } else if (*zc) {
            Graph g = load_graph(zc_graph);
            ZPipelineParams p;
            p.epsilon = zc_eps;
            p.seed = zc->count("--seed") ? zc_seed : global_seed;
            p.max_rounds = zc_rounds;
            auto res = zcolour_run(g, p);
            json j{{"z_ok", res.z_ok},
                   {"complement_ok", res.complement_ok},
                   {"completed", res.completed},
                   {"d", res.clamped_d},
                   {"d_was_clamped", res.d_was_clamped}};
            if (!res.completed) j["error"] = res.complement_error;
            else {
                j["colouring"] = colouring_to_json(res.zcolour.colouring);
                j["report"] = zreport_to_json(res.zcolour.report);
                j["best_effort"] = res.zcolour.best_effort;
                j["peacefulness"] = res.zcolour.measured_peacefulness;
            }
            emit(j, zc_out);
        } else if (*nib) {
            Graph g = load_graph(nib_graph);
            NibbleParams p;
            p.b_const = nib_b;
            p.seed = nib->count("--seed") ? nib_seed : global_seed;
            p.log_base = log_base();
            p.policy = nib_policy == "restart-on-violation" ? NibblePolicy::restart_on_violation
                                                            : NibblePolicy::monitor_only;
            p.max_restarts = nib_restarts;
            p.monitor_sample = nib_monitor;
            auto res = nibble_colour(g, p);
            json j{{"trace", trace_to_json(res.trace)}, {"stats", nibble_stats_to_json(res.stats)}};
            if (nib_post) {
                int band = nib_cprime > 0 ? nib_cprime
                                          : default_recolour_band(g.max_degree(), p.log_base);
                auto post = postprocess_recolour(g, res.colouring, band);
                if (!post.ok) j["postprocess_error"] = post.error;
                else {
                    j["colouring"] = colouring_to_json(post.colouring);
                    j["recoloured"] = post.recoloured;
                }
            } else {
                j["colouring"] = colouring_to_json(res.colouring);
            }
            emit(j, nib_out);
        } else if (*star) {
            auto res = simulate_star(star_delta, star_b,
                                     star->count("--seed") ? star_seed : global_seed, star_trials,
                                     log_base());
            emit(star_stats_to_json(res), star_out);
        } else if (*trc) {
            emit(trace_to_json(idealized_trace(trc_delta, trc_b, log_base())), trc_out);
        } else if (*aud) {
            Graph g = load_graph(aud_graph);
            Bipartition bip = bipartition_from_json(read_json_file(aud_bip));
            json j;
            if (!aud_colouring.empty()) {
                PartialColouring f = load_colouring(aud_colouring);
                auto a = audit_uniqueness(g, bip, f);
                j["uniqueness"] = uniqueness_audit_to_json(a);
                j["m_recount"] = recount_m_by_sorting(g, bip, f);
            }
            if (aud_max_size > 0)
                j["subsets"] = subset_audit_to_json(
                    audit_subsets(g, bip, aud_max_size, aud_samples,
                                  aud->count("--seed") ? aud_seed : global_seed));
            emit(j, aud_out);
        } else if (*swp) {
            auto config = load_experiment_config(swp_config);
            if (app.count("--threads")) config.threads = threads;
            if (app.count("--seed") && config.seed == 0) config.seed = global_seed;
            auto outcome = run_experiment(config);
            std::cout << "report: " << outcome.csv_path << " (" << outcome.cells_run << " run, "
                      << outcome.cells_skipped << " skipped, " << outcome.cells_failed
                      << " failed)\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
