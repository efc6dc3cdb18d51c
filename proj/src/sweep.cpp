#include "peacekit/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "peacekit/json_io.hpp"
#include "peacekit/nibble.hpp"
#include "peacekit/oneshot.hpp"
#include "peacekit/rng.hpp"
#include "peacekit/zcolour.hpp"

namespace fs = std::filesystem;

namespace peacekit {

namespace {

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
    ExperimentConfig config;
    std::istringstream in(text);
    std::string line;
    ExperimentCell* cell = nullptr;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        if (t == "[[cell]]") {
            config.cells.emplace_back();
            cell = &config.cells.back();
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected key = value");
        std::string key = strip(t.substr(0, eq));
        std::string value = unquote(strip(t.substr(eq + 1)));
        if (!cell) {
            if (key == "seed") config.seed = std::stoull(value);
            else if (key == "out_dir") config.out_dir = value;
            else if (key == "threads") config.threads = std::stoi(value);
            else throw std::runtime_error("config: unknown global key '" + key + "'");
            continue;
        }
        if (key == "family") cell->family = value;
        else if (key == "n") cell->n = std::stoi(value);
        else if (key == "delta") cell->delta = std::stoi(value);
        else if (key == "algorithm") cell->algorithm = value;
        else if (key == "seed") {
            cell->has_seed = true;
            cell->seed = std::stoull(value);
        } else cell->params[key] = value;
    }
    if (config.cells.empty()) throw std::runtime_error("config: no [[cell]] tables");
    for (const auto& c : config.cells) {
        if (c.family.empty()) throw std::runtime_error("config: cell without a family");
        if (c.algorithm.empty()) throw std::runtime_error("config: cell without an algorithm");
    }
    return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_experiment_config(buf.str());
}

std::uint64_t cell_seed(const ExperimentConfig& config, std::size_t index) {
    const auto& cell = config.cells[index];
    if (cell.has_seed) return cell.seed;
    return mix_seed(config.seed, 0xce11ULL, index);
}

namespace {

struct CellRow {
    std::string text;
    bool failed = false;
};

double param_or(const ExperimentCell& cell, const std::string& key, double fallback) {
    auto it = cell.params.find(key);
    return it == cell.params.end() ? fallback : std::stod(it->second);
}

Graph make_cell_graph(const ExperimentCell& cell, std::uint64_t graph_seed) {
    const char* cache = std::getenv("PEACEKIT_CACHE_DIR");
    std::string cache_path;
    if (cache && cell.family != "file") {
        std::ostringstream name;
        name << cell.family << '_' << cell.n << '_' << cell.delta << '_' << graph_seed << ".graph";
        cache_path = (fs::path(cache) / name.str()).string();
        if (fs::exists(cache_path)) return load_graph(cache_path);
    }
    Graph g;
    if (cell.family == "regular") {
        g = random_regular(cell.n, cell.delta, graph_seed);
    } else if (cell.family == "complete") {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < cell.n; ++i)
            for (int j = i + 1; j < cell.n; ++j) edges.emplace_back(i, j);
        g = Graph::from_edges(cell.n, edges);
    } else if (cell.family == "adversarial") {
        g = adversarial_bipartite(cell.delta, graph_seed).first;
    } else if (cell.family == "file") {
        g = load_graph(cell.params.at("path"));
    } else {
        throw std::runtime_error("unknown family: " + cell.family);
    }
    if (!cache_path.empty()) {
        fs::create_directories(fs::path(cache_path).parent_path());
        save_graph(g, cache_path);
    }
    return g;
}

std::string params_text(const ExperimentCell& cell) {
    std::string out;
    for (const auto& [k, v] : cell.params) {
        if (!out.empty()) out += ';';
        out += k + "=" + v;
    }
    return out.empty() ? "-" : out;
}

CellRow run_cell(const ExperimentConfig& config, std::size_t index) {
    const auto& cell = config.cells[index];
    std::uint64_t seed = cell_seed(config, index);
    std::uint64_t graph_seed =
        cell.params.count("graph_seed") ? std::stoull(cell.params.at("graph_seed")) : seed;

    std::ostringstream row;
    CellRow out;
    try {
        Graph g = make_cell_graph(cell, graph_seed);
        row << cell.family << ',' << g.vertex_count() << ',' << g.max_degree() << ',';
        int codeg = max_codegree(g);
        auto t0 = std::chrono::steady_clock::now();

        PartialColouring colouring;
        if (cell.algorithm == "greedy") {
            PartialColouring empty(g.vertex_count(), g.max_degree() + 1);
            colouring = greedy_complete(g, empty, g.max_degree()).colouring;
        } else if (cell.algorithm == "oneshot") {
            OneShotParams p;
            p.mu = param_or(cell, "mu", 0.5);
            p.seed = seed;
            p.max_resample_rounds = static_cast<long long>(param_or(cell, "max_rounds", -1));
            colouring = oneshot_colour(g, p).colouring;
        } else if (cell.algorithm == "zcolour") {
            ZPipelineParams p;
            p.epsilon = param_or(cell, "epsilon", 1.0 / 8001.0);
            p.seed = seed;
            p.max_rounds = static_cast<int>(param_or(cell, "max_rounds", 200));
            auto res = zcolour_run(g, p);
            if (!res.completed) throw std::runtime_error("zcolour: " + res.complement_error);
            colouring = res.zcolour.colouring;
        } else if (cell.algorithm == "nibble") {
            NibbleParams p;
            p.b_const = param_or(cell, "b_const", 4.0);
            p.seed = seed;
            auto res = nibble_colour(g, p);
            int band = static_cast<int>(
                param_or(cell, "c_prime", default_recolour_band(g.max_degree())));
            auto post = postprocess_recolour(g, res.colouring, band);
            if (!post.ok) throw std::runtime_error("postprocess: " + post.error);
            colouring = post.colouring;
        } else {
            throw std::runtime_error("unknown algorithm: " + cell.algorithm);
        }
        auto t1 = std::chrono::steady_clock::now();
        long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

        // report <-> artifact consistency: persist, reload, recompute
        std::string art = (fs::path(config.out_dir) / ("cell_" + std::to_string(index) + ".json"))
                              .string();
        save_colouring(colouring, art);
        PartialColouring reloaded = load_colouring(art);
        PeaceReport rep = peace_report(g, reloaded);
        double umean = unique_neighbour_mean(g, reloaded);

        row << codeg << ',' << cell.algorithm << ',' << params_text(cell) << ',' << seed << ','
            << reloaded.colours_used() << ',' << rep.peacefulness << ',' << umean << ',' << ms
            << ",ok";
    } catch (const std::exception& e) {
        std::string msg = e.what();
        for (auto& ch : msg)
            if (ch == ',' || ch == '\n') ch = ';';
        row.str("");
        row << cell.family << ',' << cell.n << ',' << cell.delta << ",0," << cell.algorithm << ','
            << params_text(cell) << ',' << seed << ",0,0,0,0,error:" << msg;
        out.failed = true;
    }
    out.text = row.str();
    return out;
}

}  // namespace

SweepOutcome run_experiment(const ExperimentConfig& config) {
    fs::create_directories(config.out_dir);
    SweepOutcome outcome;
    outcome.csv_path = (fs::path(config.out_dir) / "report.csv").string();

    const std::string header =
        "family,n,delta,codegree_max,algorithm,params,seed,colours_used,peacefulness,"
        "unique_mean,runtime_ms,status";

    // resume: rows are written in cell order, so a complete prefix can be kept
    std::size_t done = 0;
    std::vector<std::string> existing;
    if (fs::exists(outcome.csv_path)) {
        std::ifstream in(outcome.csv_path);
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (first) {
                first = false;
                if (line != header) break;  // stale format, rewrite everything
                continue;
            }
            if (!line.empty()) existing.push_back(line);
        }
        if (!existing.empty() && existing.size() <= config.cells.size()) done = existing.size();
        else existing.clear();
    }
    outcome.cells_skipped = static_cast<int>(done);

    std::vector<CellRow> rows(config.cells.size());
    std::atomic<std::size_t> next{done};
    int threads = std::max(1, config.threads);
    auto worker = [&]() {
        while (true) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= config.cells.size()) break;
            rows[idx] = run_cell(config, idx);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ofstream out(outcome.csv_path, std::ios::binary);
    out << header << '\n';
    for (std::size_t i = 0; i < done; ++i) out << existing[i] << '\n';
    for (std::size_t i = done; i < config.cells.size(); ++i) {
        out << rows[i].text << '\n';
        ++outcome.cells_run;
        if (rows[i].failed) ++outcome.cells_failed;
    }
    return outcome;
}

}  // namespace peacekit
