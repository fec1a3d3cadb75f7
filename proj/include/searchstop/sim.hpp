#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "searchstop/pmf.hpp"
#include "searchstop/rng.hpp"

namespace searchstop {

// Monte-Carlo harness: ground-truth environments, batched trial execution
// with per-trial RNG streams, and aggregation into error-rate and
// sample-count estimates.

enum class Scheme { adaptive, nonadaptive, oracle };

std::string scheme_name(Scheme scheme);
Scheme scheme_from_name(const std::string& name);

// Where the target actually is (0 = absent) and what the two observation
// distributions are. mu is hidden from the universal schemes; only the
// oracle's model is built from it.
struct EnvSpec {
    std::size_t num_locations = 2;
    std::size_t ground_truth = 0;  // 0..num_locations
    Pmf mu;
    Pmf pi;

    static constexpr double min_separation = 1e-6;  // total variation floor

    // Throws ConfigError. mu must differ from pi (total variation above the
    // floor) whenever a target is declared present.
    void validate() const;
};

// Observation generator: queries to the target's location draw from mu,
// everything else draws from pi.
class Environment {
public:
    Environment(const EnvSpec& spec, Rng rng) : spec_(&spec), rng_(rng) {}

    std::size_t observe(std::size_t location) {
        return rng_.sample(location == spec_->ground_truth ? spec_->mu : spec_->pi);
    }

private:
    const EnvSpec* spec_;
    Rng rng_;
};

// A full experiment description: which scheme, against which environment,
// with which scheme parameters. Parameters irrelevant to the chosen scheme
// are carried but ignored.
struct BatchSpec {
    Scheme scheme = Scheme::adaptive;
    EnvSpec env;

    double a = 15.0;        // adaptive: inner-test threshold
    double rho1 = 2.0;      // adaptive + inner test
    double rho2 = 1.2;      // adaptive outer exponent
    double b = 0.1;         // adaptive + oracle exploration rate
    double a_bar = 15.0;    // non-adaptive threshold
    double a_prime = 100.0; // oracle threshold
    double nu = 0.9;        // slope-reporting deflation only; not used by any scheme
    std::int64_t max_outer_steps = 10'000'000;

    void validate() const;

    // The scheme's own threshold parameter (a, a_bar, or a_prime).
    double threshold() const;
    void set_threshold(double value);

    // The reliability exponent the scheme's stopping level buys:
    // adaptive a^rho2 (log a)^rho1, non-adaptive log(a_bar),
    // oracle log(a_prime). Normalizing sample counts by this makes schemes
    // comparable at matched reliability.
    double threshold_exponent() const;
};

struct TrialRecord {
    Scheme scheme;
    std::size_t ground_truth;
    std::int64_t decision;  // 0..M, or -1 when the safety cap fired
    std::int64_t total_samples;
    std::int64_t outer_time;
    bool correct;
    bool horizon_exceeded;
    std::uint64_t seed;  // the trial's derived environment-stream seed
};

// Executes `trials` independent runs. Trial j draws its environment stream
// from (master_seed, j, lane 0) and its policy stream from (master_seed, j,
// lane 1), so records are a pure function of the arguments no matter how many
// threads execute them. A trial that hits the safety cap is recorded with
// decision -1 and horizon_exceeded set, never dropped.
std::vector<TrialRecord> run_batch(const BatchSpec& spec, std::int64_t trials,
                                   std::uint64_t master_seed, unsigned threads = 1);

// 95% Wilson score interval for a binomial proportion.
struct Interval {
    double lo;
    double hi;
};
Interval wilson_interval(std::int64_t successes, std::int64_t n);

// Aggregates for one ground-truth value within a batch.
struct HypothesisMetrics {
    std::size_t ground_truth;
    std::int64_t trials;           // records with this ground truth
    std::int64_t decided;          // trials minus flagged
    std::int64_t errors;           // wrong decisions among decided
    std::int64_t flagged;          // safety-cap records (excluded from moments)
    double error_rate;             // errors / decided
    Interval error_interval;
    double mean_samples;
    double stderr_samples;
    double mean_outer_time;
    // Sample count normalized by the theory's prediction for this scheme and
    // hypothesis; NaN where no prediction applies (universal schemes under a
    // true null, or an all-flagged cell).
    double slope;
};

struct MetricsSummary {
    std::vector<HypothesisMetrics> per_hypothesis;  // ascending ground truth
    std::int64_t total_trials;
};

// Pure aggregation of records; the batch spec supplies the slope denominators.
// Throws EmptyBatch on an empty record list.
MetricsSummary summarize(const std::vector<TrialRecord>& records, const BatchSpec& spec);

struct SweepRow {
    double threshold;
    double mean_samples;
    double stderr_samples;
    double error_rate;
    double wilson_hi;
    double slope;
};

// Runs one batch per threshold value (at least two) and reports the slope
// trend. Row i derives its own master seed from (master_seed, i), so rows are
// independent and reproducible individually.
std::vector<SweepRow> exponent_sweep(const BatchSpec& spec,
                                     const std::vector<double>& thresholds,
                                     std::int64_t trials, std::uint64_t master_seed,
                                     unsigned threads = 1);

}  // namespace searchstop
