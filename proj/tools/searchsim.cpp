// Command-line front end: runs search-and-stop experiments described by a
// JSON config and writes machine-readable results (records CSV, sweep CSV,
// summary JSON).

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "searchstop/config.hpp"
#include "searchstop/errors.hpp"
#include "searchstop/output.hpp"
#include "searchstop/selftest.hpp"
#include "searchstop/sim.hpp"

namespace {

using namespace searchstop;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Overrides {
    std::optional<std::int64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<unsigned> threads;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--trials", ov.trials, "Override the trial count");
    cmd->add_option("--seed", ov.seed, "Override the master seed");
    cmd->add_option("--out", ov.out, "Override the output directory");
    cmd->add_option("--threads", ov.threads, "Override the worker thread count");
}

ExperimentConfig load_with_overrides(const std::string& path, const Overrides& ov) {
    ExperimentConfig cfg = load_config_file(path);
    if (ov.trials) cfg.trials = *ov.trials;
    if (ov.seed) cfg.master_seed = *ov.seed;
    if (ov.out) cfg.out_dir = *ov.out;
    if (ov.threads) cfg.threads = *ov.threads;
    validate_experiment(cfg);
    return cfg;
}

std::filesystem::path prepare_out_dir(const ExperimentConfig& cfg) {
    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// One batch per hypothesis when ground_truth is "all", a single batch
// otherwise; records concatenated in hypothesis order.
std::vector<TrialRecord> run_configured_batches(const ExperimentConfig& cfg) {
    if (!cfg.all_hypotheses)
        return run_batch(cfg.batch, cfg.trials, cfg.master_seed, cfg.threads);
    std::vector<TrialRecord> records;
    for (std::size_t h = 0; h <= cfg.batch.env.num_locations; ++h) {
        BatchSpec spec = cfg.batch;
        spec.env.ground_truth = h;
        const std::uint64_t seed = derive_seed(cfg.master_seed, 1000000 + h, 2);
        std::vector<TrialRecord> part = run_batch(spec, cfg.trials, seed, cfg.threads);
        records.insert(records.end(), part.begin(), part.end());
    }
    return records;
}

int cmd_simulate(const std::string& path, const Overrides& ov) {
    const ExperimentConfig cfg = load_with_overrides(path, ov);
    if (cfg.paired)
        throw ConfigError("scheme \"paired\" is only valid with the sweep subcommand");
    if (!cfg.thresholds.empty())
        throw ConfigError("'thresholds' is only valid with the sweep subcommand");

    const std::vector<TrialRecord> records = run_configured_batches(cfg);
    const MetricsSummary summary = summarize(records, cfg.batch);

    const std::filesystem::path dir = prepare_out_dir(cfg);
    write_text_file((dir / "records.csv").string(), records_to_csv(records));
    write_text_file((dir / "summary.json").string(), summary_to_json_text(cfg, summary));

    for (const HypothesisMetrics& m : summary.per_hypothesis)
        std::cout << "ground_truth=" << m.ground_truth << " trials=" << m.trials
                  << " error_rate=" << format_double(m.error_rate)
                  << " mean_samples=" << format_double(m.mean_samples) << "\n";
    std::cout << "wrote " << (dir / "records.csv").string() << " and "
              << (dir / "summary.json").string() << "\n";
    return kExitOk;
}

int cmd_sweep(const std::string& path, const Overrides& ov) {
    const ExperimentConfig cfg = load_with_overrides(path, ov);
    if (cfg.thresholds.size() < 2)
        throw ConfigError("sweep needs a 'thresholds' grid with at least two values");
    const std::filesystem::path dir = prepare_out_dir(cfg);

    if (cfg.paired) {
        BatchSpec adaptive = cfg.batch;
        adaptive.scheme = Scheme::adaptive;
        BatchSpec nonadaptive = cfg.batch;
        nonadaptive.scheme = Scheme::nonadaptive;

        const std::vector<SweepRow> rows_a =
            exponent_sweep(adaptive, cfg.thresholds, cfg.trials,
                           derive_seed(cfg.master_seed, 0, 4), cfg.threads);
        const std::vector<SweepRow> rows_n =
            exponent_sweep(nonadaptive, cfg.thresholds, cfg.trials,
                           derive_seed(cfg.master_seed, 1, 4), cfg.threads);

        std::vector<PairedRatioRow> ratios;
        for (std::size_t i = 0; i < cfg.thresholds.size(); ++i) {
            adaptive.set_threshold(cfg.thresholds[i]);
            nonadaptive.set_threshold(cfg.thresholds[i]);
            const double per_rel_a = rows_a[i].mean_samples / adaptive.threshold_exponent();
            const double per_rel_n =
                rows_n[i].mean_samples / nonadaptive.threshold_exponent();
            ratios.push_back(
                {cfg.thresholds[i], per_rel_a, per_rel_n, per_rel_n / per_rel_a});
        }

        write_text_file((dir / "sweep_adaptive.csv").string(), sweep_to_csv(rows_a));
        write_text_file((dir / "sweep_nonadaptive.csv").string(), sweep_to_csv(rows_n));
        write_text_file((dir / "summary.json").string(),
                        paired_summary_to_json_text(cfg, rows_a, rows_n, ratios));
        for (const PairedRatioRow& row : ratios)
            std::cout << "threshold=" << format_double(row.threshold)
                      << " gain=" << format_double(row.ratio) << " (target "
                      << cfg.batch.env.num_locations << ")\n";
        return kExitOk;
    }

    const std::vector<SweepRow> rows =
        exponent_sweep(cfg.batch, cfg.thresholds, cfg.trials, cfg.master_seed, cfg.threads);
    write_text_file((dir / "sweep.csv").string(), sweep_to_csv(rows));
    write_text_file((dir / "summary.json").string(), sweep_summary_to_json_text(cfg, rows));
    for (const SweepRow& row : rows)
        std::cout << "threshold=" << format_double(row.threshold)
                  << " mean_N=" << format_double(row.mean_samples)
                  << " slope=" << format_double(row.slope) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulator for universal search-and-stop schemes"};
    app.require_subcommand(1);

    std::string simulate_config;
    Overrides simulate_ov;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Run one batch of trials and write records + summary");
    simulate->add_option("config", simulate_config, "JSON experiment config")->required();
    add_override_flags(simulate, simulate_ov);

    std::string sweep_config;
    Overrides sweep_ov;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Run a threshold sweep and write the slope table");
    sweep->add_option("config", sweep_config, "JSON experiment config")->required();
    add_override_flags(sweep, sweep_ov);

    CLI::App* selftest =
        app.add_subcommand("selftest", "Run the deterministic invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (simulate->parsed()) return cmd_simulate(simulate_config, simulate_ov);
        if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_ov);
        if (selftest->parsed()) return run_selftest(std::cout) ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
