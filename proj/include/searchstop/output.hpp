#pragma once

#include <string>
#include <vector>

#include "searchstop/config.hpp"
#include "searchstop/sim.hpp"

namespace searchstop {

// Serialization of harness results. All floating-point fields are rendered
// with the shortest representation that round-trips to the same double, so
// files are locale-independent and diffable across runs.

std::string format_double(double value);

// Header: scheme,ground_truth,decision,total_samples,outer_time,correct,
// horizon_exceeded,seed — one row per trial, in trial order.
std::string records_to_csv(const std::vector<TrialRecord>& records);

// Header: threshold,mean_N,stderr_N,error_rate,wilson_hi,slope.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

// Summary documents: {"version", "config": <normalized echo>, ...}. Repeating
// the echoed config reproduces the records byte for byte. Non-finite metric
// values serialize as null.
std::string summary_to_json_text(const ExperimentConfig& cfg, const MetricsSummary& summary);
std::string sweep_summary_to_json_text(const ExperimentConfig& cfg,
                                       const std::vector<SweepRow>& rows);

// Paired adaptive/non-adaptive comparison: per grid point, each scheme's mean
// sample count divided by its reliability exponent, and their quotient (the
// adaptivity gain, which should approach the number of locations).
struct PairedRatioRow {
    double threshold;
    double adaptive_per_reliability;
    double nonadaptive_per_reliability;
    double ratio;
};
std::string paired_summary_to_json_text(const ExperimentConfig& cfg,
                                        const std::vector<SweepRow>& adaptive_rows,
                                        const std::vector<SweepRow>& nonadaptive_rows,
                                        const std::vector<PairedRatioRow>& ratios);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace searchstop
