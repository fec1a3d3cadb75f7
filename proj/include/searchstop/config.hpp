#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "searchstop/sim.hpp"

namespace searchstop {

// A fully parsed experiment: one batch description plus harness-level knobs.
// Parsed from a single JSON document; unknown keys are rejected so typos
// cannot silently fall back to defaults.
struct ExperimentConfig {
    BatchSpec batch;

    // "scheme": "paired" — run the adaptive and non-adaptive schemes over the
    // same threshold grid and report per-reliability sample-count ratios.
    bool paired = false;

    // ground_truth "all" — run one batch per hypothesis 0..M.
    bool all_hypotheses = false;

    // Sweep grid over the scheme's threshold parameter; empty for plain runs.
    std::vector<double> thresholds;

    std::int64_t trials = 1000;
    std::uint64_t master_seed = 1;
    unsigned threads = 1;
    std::string out_dir = ".";
};

// Parses and validates. Throws ConfigError with a message naming the violated
// constraint (JSON syntax errors included).
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

// Semantic validation (again after CLI overrides): batch preconditions, and
// every grid point if a sweep is configured.
void validate_experiment(const ExperimentConfig& cfg);

// The normalized config as JSON text: defaults filled in, sufficient to
// reproduce the run exactly. Embedded in summary files.
std::string config_echo_text(const ExperimentConfig& cfg);

}  // namespace searchstop
