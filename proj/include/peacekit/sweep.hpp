#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "peacekit/graph.hpp"

namespace peacekit {

// One experiment cell: a (graph family, algorithm, seed) instance.
struct ExperimentCell {
    std::string family;     // regular | complete | adversarial | file
    int n = 0;
    int delta = 0;
    std::string algorithm;  // greedy | oneshot | zcolour | nibble
    std::map<std::string, std::string> params;  // algorithm knobs as text
    bool has_seed = false;
    std::uint64_t seed = 0;  // explicit seed; derived from the index otherwise
};

struct ExperimentConfig {
    std::uint64_t seed = 0;
    std::string out_dir = "sweep-out";
    int threads = 1;
    std::vector<ExperimentCell> cells;
};

// Minimal TOML-style reader: global `key = value` lines, then one
// `[[cell]]` table per cell.  Strings quoted, numbers bare.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

// Per-cell seed split; explicit cell seeds pass through unchanged.
std::uint64_t cell_seed(const ExperimentConfig& config, std::size_t index);

struct SweepOutcome {
    int cells_run = 0;
    int cells_skipped = 0;  // already present in the report (resume)
    int cells_failed = 0;
    std::string csv_path;
};

// Runs every cell, appending one CSV row per cell in cell order.  Rows already
// in the CSV are skipped, failures are recorded with an error status, and the
// reported peacefulness is recomputed from the persisted colouring file.
SweepOutcome run_experiment(const ExperimentConfig& config);

}  // namespace peacekit
