#include "peacekit/json_io.hpp"

#include <fstream>
#include <sstream>

namespace peacekit {

std::string dump_json(const json& j) { return j.dump() + "\n"; }

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << dump_json(j);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return json::parse(in);
}

json colouring_to_json(const PartialColouring& f) {
    json cols = json::array();
    for (int c : f.colours) {
        if (c == kUncoloured) cols.push_back(nullptr);
        else cols.push_back(c);
    }
    return json{{"palette", f.palette_size}, {"colours", std::move(cols)}};
}

PartialColouring colouring_from_json(const json& j) {
    PartialColouring f;
    f.palette_size = j.at("palette").get<int>();
    for (const auto& item : j.at("colours")) {
        if (item.is_null()) f.colours.push_back(kUncoloured);
        else f.colours.push_back(item.get<int>());
    }
    return f;
}

void save_colouring(const PartialColouring& f, const std::string& path) {
    write_json_file(colouring_to_json(f), path);
}

PartialColouring load_colouring(const std::string& path) {
    return colouring_from_json(read_json_file(path));
}

json peace_report_to_json(const PeaceReport& rep) {
    return json{{"undisturbed", rep.undisturbed},
                {"disturbed", rep.disturbed},
                {"uncoloured_neighbours", rep.uncoloured_neighbours},
                {"peacefulness", rep.peacefulness}};
}

json bipartition_to_json(const Bipartition& bip) {
    return json{{"side_a", bip.side_a}, {"side_b", bip.side_b}};
}

Bipartition bipartition_from_json(const json& j) {
    Bipartition bip;
    bip.side_a = j.at("side_a").get<std::vector<int>>();
    bip.side_b = j.at("side_b").get<std::vector<int>>();
    return bip;
}

json decomposition_to_json(const DenseDecomposition& dd) {
    return json{{"dense_sets", dd.dense_sets}, {"sparse_set", dd.sparse_set}, {"d", dd.d}};
}

DenseDecomposition decomposition_from_json(const json& j) {
    DenseDecomposition dd;
    dd.dense_sets = j.at("dense_sets").get<std::vector<std::vector<int>>>();
    dd.sparse_set = j.at("sparse_set").get<std::vector<int>>();
    dd.d = j.at("d").get<int>();
    return dd;
}

json trace_to_json(const IdealizedTrace& t) {
    return json{{"delta", t.delta},
                {"b_const", t.b_const},
                {"alpha", t.alpha},
                {"i_star", t.i_star},
                {"palette", t.palette},
                {"list_size", t.list_size},
                {"good_size", t.good_size},
                {"uncoloured", t.uncoloured},
                {"activated", t.activated},
                {"list_target", t.list_target},
                {"floor_ok", t.floor_ok}};
}

json star_stats_to_json(const StarStats& s) {
    return json{{"trials", s.trials},
                {"list_mean", s.list_mean},
                {"list_sd", s.list_sd},
                {"good_mean", s.good_mean},
                {"good_sd", s.good_sd},
                {"uncoloured_mean", s.uncoloured_mean},
                {"activated_mean", s.activated_mean}};
}

json nibble_stats_to_json(const NibbleStats& s) {
    json rows = json::array();
    for (const auto& r : s.rows) {
        rows.push_back(json{{"iteration", r.iteration},
                            {"activated", r.activated},
                            {"newly_coloured", r.newly_coloured},
                            {"mono_marked", r.mono_marked},
                            {"sched_target", r.sched_target},
                            {"min_list", r.min_list},
                            {"max_list", r.max_list},
                            {"undershoot_count", r.undershoot_count},
                            {"clamped_pairs", r.clamped_pairs},
                            {"target_retention", r.target_retention},
                            {"monitor_a_max", r.monitor_a_max},
                            {"monitor_a_bound", r.monitor_a_bound},
                            {"monitor_b_max", r.monitor_b_max},
                            {"monitor_b_bound", r.monitor_b_bound},
                            {"monitor_c_max", r.monitor_c_max},
                            {"monitor_c_bound", r.monitor_c_bound},
                            {"monitor_d_violations", r.monitor_d_violations},
                            {"monitor_e_min_slack", r.monitor_e_min_slack},
                            {"any_violation", r.any_violation}});
    }
    return json{{"rows", std::move(rows)},
                {"palette", s.palette},
                {"coloured", s.coloured},
                {"stripped", s.stripped},
                {"restarts_used", s.restarts_used},
                {"violations_seen", s.violations_seen},
                {"unique_neighbour_mean", s.unique_neighbour_mean}};
}

json uniqueness_audit_to_json(const UniquenessAudit& a) {
    return json{{"m_total", a.m_total},
                {"min_cb", a.min_cb},
                {"witness_b", a.witness_b},
                {"cb", a.cb}};
}

json subset_audit_to_json(const SubsetAudit& a) {
    json rows = json::array();
    for (const auto& r : a.rows)
        rows.push_back(json{{"subset_size", r.subset_size},
                            {"samples", r.samples},
                            {"max_exactly_one", r.max_exactly_one},
                            {"mean_exactly_one", r.mean_exactly_one},
                            {"exceed_bound", r.exceed_bound}});
    return json{{"bound", a.bound}, {"rows", std::move(rows)}};
}

json zreport_to_json(const ZBadEventReport& rep) {
    return json{{"vertices", rep.vertices},
                {"unique_kept", rep.unique_kept},
                {"uncoloured_in_z", rep.uncoloured_in_z},
                {"crowded", rep.crowded},
                {"score", rep.score},
                {"bad_events", rep.bad_events}};
}

}  // namespace peacekit
