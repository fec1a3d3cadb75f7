#include "searchstop/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "searchstop/chernoff.hpp"
#include "searchstop/errors.hpp"
#include "searchstop/info.hpp"
#include "searchstop/search_adaptive.hpp"
#include "searchstop/search_nonadaptive.hpp"

namespace searchstop {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::adaptive: return "adaptive";
        case Scheme::nonadaptive: return "nonadaptive";
        case Scheme::oracle: return "oracle";
    }
    throw Error("unreachable scheme value");
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "adaptive") return Scheme::adaptive;
    if (name == "nonadaptive") return Scheme::nonadaptive;
    if (name == "oracle") return Scheme::oracle;
    throw ConfigError("unknown scheme '" + name +
                      "' (expected adaptive, nonadaptive, or oracle)");
}

void EnvSpec::validate() const {
    if (num_locations < 2) throw ConfigError("environment needs >= 2 locations");
    if (ground_truth > num_locations)
        throw ConfigError("ground_truth must be 0 (absent) or a location in 1..M");
    if (pi.size() < 2) throw ConfigError("environment alphabet needs at least 2 symbols");
    if (mu.size() != pi.size())
        throw ConfigError("mu and pi must share one alphabet");
    pi.require_full_support();
    if (ground_truth != 0 && mu.total_variation(pi) <= min_separation)
        throw ConfigError("a present target requires mu to differ from pi "
                          "(total variation above 1e-6)");
}

void BatchSpec::validate() const {
    env.validate();
    if (!(nu > 0.0 && nu < 1.0)) throw ConfigError("nu must lie strictly between 0 and 1");
    if (max_outer_steps < 1) throw ConfigError("max_outer_steps must be >= 1");
    switch (scheme) {
        case Scheme::adaptive: {
            const AdaptiveConfig cfg{env.num_locations, a, rho1, rho2, b, env.pi,
                                     max_outer_steps};
            cfg.validate();
            break;
        }
        case Scheme::nonadaptive: {
            const NonAdaptiveConfig cfg{env.num_locations, a_bar, env.pi};
            cfg.validate();
            break;
        }
        case Scheme::oracle: {
            if (!(a_prime > 1.0)) throw ConfigError("oracle threshold a_prime must exceed 1");
            if (!(b > 0.0)) throw ConfigError("exploration rate b must be positive");
            make_search_model(env.num_locations, env.mu, env.pi).validate();
            break;
        }
    }
}

double BatchSpec::threshold() const {
    switch (scheme) {
        case Scheme::adaptive: return a;
        case Scheme::nonadaptive: return a_bar;
        case Scheme::oracle: return a_prime;
    }
    throw Error("unreachable scheme value");
}

void BatchSpec::set_threshold(double value) {
    switch (scheme) {
        case Scheme::adaptive: a = value; return;
        case Scheme::nonadaptive: a_bar = value; return;
        case Scheme::oracle: a_prime = value; return;
    }
    throw Error("unreachable scheme value");
}

double BatchSpec::threshold_exponent() const {
    switch (scheme) {
        case Scheme::adaptive: {
            const AdaptiveConfig cfg{env.num_locations, a, rho1, rho2, b, env.pi,
                                     max_outer_steps};
            return cfg.outer_exponent();
        }
        case Scheme::nonadaptive: return std::log(a_bar);
        case Scheme::oracle: return std::log(a_prime);
    }
    throw Error("unreachable scheme value");
}

namespace {

// Shared, immutable per-batch context so trials only do per-trial work.
struct BatchContext {
    const BatchSpec* spec;
    // Oracle-only tables; empty otherwise.
    ExperimentModel model;
    OraclePolicy policy;
};

TrialRecord run_trial(const BatchContext& ctx, std::uint64_t master_seed,
                      std::int64_t trial) {
    const BatchSpec& spec = *ctx.spec;
    const std::uint64_t env_seed = derive_seed(master_seed, static_cast<std::uint64_t>(trial), 0);
    Environment env(spec.env, Rng(env_seed));
    Rng policy_rng(derive_seed(master_seed, static_cast<std::uint64_t>(trial), 1));

    TrialRecord record{};
    record.scheme = spec.scheme;
    record.ground_truth = spec.env.ground_truth;
    record.seed = env_seed;
    try {
        SearchResult result{};
        switch (spec.scheme) {
            case Scheme::adaptive: {
                const AdaptiveConfig cfg{spec.env.num_locations, spec.a, spec.rho1,
                                         spec.rho2, spec.b, spec.env.pi,
                                         spec.max_outer_steps};
                result = run_search(cfg, [&](std::size_t u) { return env.observe(u); });
                break;
            }
            case Scheme::nonadaptive: {
                const NonAdaptiveConfig cfg{spec.env.num_locations, spec.a_bar, spec.env.pi};
                result = nonadaptive_run(cfg, [&](std::size_t u) { return env.observe(u); });
                break;
            }
            case Scheme::oracle: {
                const OracleResult oracle = run_oracle(
                    ctx.model, ctx.policy, spec.a_prime, spec.b,
                    [&](std::size_t u) { return env.observe(u + 1); }, policy_rng,
                    spec.max_outer_steps);
                result = SearchResult{oracle.decision, oracle.steps, oracle.steps,
                                      oracle.decision == 0 ? StopBranch::target_missing
                                                           : StopBranch::target_found};
                break;
            }
        }
        record.decision = static_cast<std::int64_t>(result.decision);
        record.total_samples = result.total_samples;
        record.outer_time = result.outer_time;
        record.correct = result.decision == spec.env.ground_truth;
        record.horizon_exceeded = false;
    } catch (const HorizonExceeded&) {
        record.decision = -1;
        record.total_samples = 0;
        record.outer_time = 0;
        record.correct = false;
        record.horizon_exceeded = true;
    }
    return record;
}

}  // namespace

std::vector<TrialRecord> run_batch(const BatchSpec& spec, std::int64_t trials,
                                   std::uint64_t master_seed, unsigned threads) {
    if (trials < 1) throw ConfigError("run_batch needs at least one trial");
    spec.validate();

    BatchContext ctx;
    ctx.spec = &spec;
    if (spec.scheme == Scheme::oracle) {
        ctx.model = make_search_model(spec.env.num_locations, spec.env.mu, spec.env.pi);
        ctx.policy = make_oracle_policy(ctx.model);
    }

    std::vector<TrialRecord> records(static_cast<std::size_t>(trials));
    if (threads <= 1) {
        for (std::int64_t j = 0; j < trials; ++j)
            records[static_cast<std::size_t>(j)] = run_trial(ctx, master_seed, j);
        return records;
    }

    // Records land at their trial index, so the assignment of trials to
    // threads cannot change the output.
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::int64_t j = next.fetch_add(1);
            if (j >= trials) return;
            records[static_cast<std::size_t>(j)] = run_trial(ctx, master_seed, j);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    return records;
}

Interval wilson_interval(std::int64_t successes, std::int64_t n) {
    if (n < 1) throw ConfigError("wilson_interval needs n >= 1");
    if (successes < 0 || successes > n)
        throw ConfigError("wilson_interval needs 0 <= successes <= n");
    constexpr double z = 1.959963984540054;  // 97.5% normal quantile
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    // At the boundaries the exact endpoints are 0 and 1; don't let the float
    // evaluation of center-half leave dust there.
    const double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
    const double hi = successes == n ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

namespace {

// Slope denominator: the theory's first-order prediction of the mean sample
// count for this scheme/hypothesis, so slope -> 1 as thresholds grow.
double predicted_samples(const BatchSpec& spec, std::size_t ground_truth) {
    const bool present = ground_truth != 0;
    double rate = kNan;
    if (present) {
        const double d = kl_divergence(spec.env.mu, spec.env.pi);
        if (!(d > 0.0)) return kNan;
        switch (spec.scheme) {
            case Scheme::adaptive:
                // Asymptotic cost target: exponent / (nu * D).
                return spec.threshold_exponent() / (spec.nu * d);
            case Scheme::nonadaptive:
                return static_cast<double>(spec.env.num_locations) * std::log(spec.a_bar) / d;
            case Scheme::oracle:
                return std::log(spec.a_prime) / d;
        }
        return kNan;
    }
    // Under the null only the oracle has a predicted rate: D(pi || mu) / M.
    if (spec.scheme == Scheme::oracle) {
        rate = kl_divergence(spec.env.pi, spec.env.mu) /
               static_cast<double>(spec.env.num_locations);
        if (!(rate > 0.0)) return kNan;
        return std::log(spec.a_prime) / rate;
    }
    return kNan;
}

}  // namespace

MetricsSummary summarize(const std::vector<TrialRecord>& records, const BatchSpec& spec) {
    if (records.empty()) throw EmptyBatch("summarize() on an empty record list");

    struct Cell {
        std::int64_t trials = 0;
        std::int64_t decided = 0;
        std::int64_t errors = 0;
        std::int64_t flagged = 0;
        double sum = 0.0;
        double sum_sq = 0.0;
        double outer_sum = 0.0;
    };
    std::map<std::size_t, Cell> cells;
    for (const TrialRecord& r : records) {
        Cell& cell = cells[r.ground_truth];
        cell.trials += 1;
        if (r.horizon_exceeded) {
            cell.flagged += 1;
            continue;
        }
        cell.decided += 1;
        if (!r.correct) cell.errors += 1;
        const double n = static_cast<double>(r.total_samples);
        cell.sum += n;
        cell.sum_sq += n * n;
        cell.outer_sum += static_cast<double>(r.outer_time);
    }

    MetricsSummary summary;
    summary.total_trials = static_cast<std::int64_t>(records.size());
    for (const auto& [ground_truth, cell] : cells) {
        HypothesisMetrics m{};
        m.ground_truth = ground_truth;
        m.trials = cell.trials;
        m.decided = cell.decided;
        m.errors = cell.errors;
        m.flagged = cell.flagged;
        if (cell.decided > 0) {
            m.error_rate = static_cast<double>(cell.errors) / static_cast<double>(cell.decided);
            m.error_interval = wilson_interval(cell.errors, cell.decided);
            const double n = static_cast<double>(cell.decided);
            m.mean_samples = cell.sum / n;
            const double var =
                cell.decided > 1
                    ? std::max(0.0, (cell.sum_sq - cell.sum * cell.sum / n) / (n - 1.0))
                    : 0.0;
            m.stderr_samples = std::sqrt(var / n);
            m.mean_outer_time = cell.outer_sum / n;
            const double predicted = predicted_samples(spec, ground_truth);
            m.slope = predicted > 0.0 ? m.mean_samples / predicted : kNan;
        } else {
            m.error_rate = kNan;
            m.error_interval = {kNan, kNan};
            m.mean_samples = kNan;
            m.stderr_samples = kNan;
            m.mean_outer_time = kNan;
            m.slope = kNan;
        }
        summary.per_hypothesis.push_back(m);
    }
    return summary;
}

std::vector<SweepRow> exponent_sweep(const BatchSpec& spec,
                                     const std::vector<double>& thresholds,
                                     std::int64_t trials, std::uint64_t master_seed,
                                     unsigned threads) {
    if (thresholds.size() < 2)
        throw ConfigError("exponent_sweep needs at least two threshold values");
    std::vector<SweepRow> rows;
    rows.reserve(thresholds.size());
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        BatchSpec point = spec;
        point.set_threshold(thresholds[i]);
        const std::uint64_t row_seed = derive_seed(master_seed, i, 2);
        const std::vector<TrialRecord> records = run_batch(point, trials, row_seed, threads);
        const MetricsSummary summary = summarize(records, point);
        const HypothesisMetrics& m = summary.per_hypothesis.front();
        rows.push_back({thresholds[i], m.mean_samples, m.stderr_samples, m.error_rate,
                        m.error_interval.hi, m.slope});
    }
    return rows;
}

}  // namespace searchstop
