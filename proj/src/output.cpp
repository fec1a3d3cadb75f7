#include "searchstop/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "searchstop/errors.hpp"

namespace searchstop {

namespace {

using nlohmann::json;

constexpr const char* kArtifactVersion = "1.0";

json metrics_to_json(const MetricsSummary& summary) {
    json node;
    node["total_trials"] = summary.total_trials;
    node["per_hypothesis"] = json::array();
    for (const HypothesisMetrics& m : summary.per_hypothesis) {
        json row;
        row["ground_truth"] = m.ground_truth;
        row["trials"] = m.trials;
        row["decided"] = m.decided;
        row["errors"] = m.errors;
        row["flagged"] = m.flagged;
        row["error_rate"] = m.error_rate;
        row["wilson_lo"] = m.error_interval.lo;
        row["wilson_hi"] = m.error_interval.hi;
        row["mean_samples"] = m.mean_samples;
        row["stderr_samples"] = m.stderr_samples;
        row["mean_outer_time"] = m.mean_outer_time;
        row["slope"] = m.slope;
        node["per_hypothesis"].push_back(std::move(row));
    }
    return node;
}

json rows_to_json(const std::vector<SweepRow>& rows) {
    json node = json::array();
    for (const SweepRow& row : rows) {
        json entry;
        entry["threshold"] = row.threshold;
        entry["mean_N"] = row.mean_samples;
        entry["stderr_N"] = row.stderr_samples;
        entry["error_rate"] = row.error_rate;
        entry["wilson_hi"] = row.wilson_hi;
        entry["slope"] = row.slope;
        node.push_back(std::move(entry));
    }
    return node;
}

json base_document(const ExperimentConfig& cfg) {
    json doc;
    doc["version"] = kArtifactVersion;
    doc["config"] = json::parse(config_echo_text(cfg));
    return doc;
}

}  // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw Error("failed to format a double");
    return std::string(buf, ptr);
}

std::string records_to_csv(const std::vector<TrialRecord>& records) {
    std::string out =
        "scheme,ground_truth,decision,total_samples,outer_time,correct,"
        "horizon_exceeded,seed\n";
    for (const TrialRecord& r : records) {
        out += scheme_name(r.scheme);
        out += ',';
        out += std::to_string(r.ground_truth);
        out += ',';
        out += std::to_string(r.decision);
        out += ',';
        out += std::to_string(r.total_samples);
        out += ',';
        out += std::to_string(r.outer_time);
        out += ',';
        out += r.correct ? '1' : '0';
        out += ',';
        out += r.horizon_exceeded ? '1' : '0';
        out += ',';
        out += std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "threshold,mean_N,stderr_N,error_rate,wilson_hi,slope\n";
    for (const SweepRow& row : rows) {
        out += format_double(row.threshold);
        out += ',';
        out += format_double(row.mean_samples);
        out += ',';
        out += format_double(row.stderr_samples);
        out += ',';
        out += format_double(row.error_rate);
        out += ',';
        out += format_double(row.wilson_hi);
        out += ',';
        out += format_double(row.slope);
        out += '\n';
    }
    return out;
}

std::string summary_to_json_text(const ExperimentConfig& cfg, const MetricsSummary& summary) {
    json doc = base_document(cfg);
    doc["metrics"] = metrics_to_json(summary);
    return doc.dump(2) + "\n";
}

std::string sweep_summary_to_json_text(const ExperimentConfig& cfg,
                                       const std::vector<SweepRow>& rows) {
    json doc = base_document(cfg);
    doc["sweep"] = rows_to_json(rows);
    return doc.dump(2) + "\n";
}

std::string paired_summary_to_json_text(const ExperimentConfig& cfg,
                                        const std::vector<SweepRow>& adaptive_rows,
                                        const std::vector<SweepRow>& nonadaptive_rows,
                                        const std::vector<PairedRatioRow>& ratios) {
    json doc = base_document(cfg);
    doc["adaptive_sweep"] = rows_to_json(adaptive_rows);
    doc["nonadaptive_sweep"] = rows_to_json(nonadaptive_rows);
    doc["ratios"] = json::array();
    for (const PairedRatioRow& row : ratios) {
        json entry;
        entry["threshold"] = row.threshold;
        entry["adaptive_per_reliability"] = row.adaptive_per_reliability;
        entry["nonadaptive_per_reliability"] = row.nonadaptive_per_reliability;
        entry["ratio"] = row.ratio;
        doc["ratios"].push_back(std::move(entry));
    }
    doc["ratio_target"] = cfg.batch.env.num_locations;
    return doc.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot open " + path + " for writing");
    file << contents;
    if (!file) throw Error("failed while writing " + path);
}

}  // namespace searchstop
