#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "searchstop/errors.hpp"
#include "searchstop/exploration.hpp"
#include "searchstop/inner_test.hpp"
#include "searchstop/search_result.hpp"

namespace searchstop {

// Universal adaptive search: knows only the absence distribution pi, never
// the target distribution. Each outer step runs one complete binary test
// (inner_test) at a chosen location; the controller tracks, per location, how
// often those tests said "target here" vs "not here", estimates the target
// location from the count differences, concentrates effort there, and stops
// once the leading location (or the absent hypothesis) is far enough ahead.

struct AdaptiveConfig {
    std::size_t num_locations;  // M >= 2
    double a;                   // inner-test threshold; must exceed 5
    double rho1;                // > 1, inner horizon exponent
    double rho2;                // > 1, outer threshold exponent
    double b;                   // > 0, exploration rate
    Pmf pi;                     // absence distribution
    // Safety cap on outer steps (completed inner tests) per run.
    std::int64_t max_outer_steps = 10'000'000;

    // Throws ConfigError when any precondition fails. a must exceed 5 so that
    // log(a-1) > 1 lets count differences stand in for log-likelihood ratios
    // with a positive conversion factor.
    void validate() const;

    // Count-difference form of the stopping level:
    // a^rho2 (log a)^rho1 / log(a-1).
    double outer_threshold() const;

    // Log-likelihood-ratio form of the same level: a^rho2 (log a)^rho1.
    double outer_exponent() const;

    InnerTestConfig inner_config() const { return {a, rho1, pi}; }
};

// Everything the outer controller knows, plus its bookkeeping cursors.
struct SearchState {
    std::vector<std::int64_t> found;      // per-location "target here" verdicts
    std::vector<std::int64_t> not_found;  // per-location "not here" verdicts
    std::int64_t t = 0;                   // completed inner tests
    std::int64_t total_samples = 0;       // raw observations across all inner tests
    std::int64_t exploration_counter = 0;
    std::size_t last_null_location = 0;   // cursor for the even-coverage cycle
    std::size_t estimate = 0;             // current location estimate, 0 = absent
    ExplorationSchedule schedule;

    explicit SearchState(const AdaptiveConfig& cfg)
        : found(cfg.num_locations, 0), not_found(cfg.num_locations, 0), schedule(cfg.b) {}
};

// argmax_i of found[i]-not_found[i] (as location i+1) when the max is
// positive, ties to the lowest location; 0 when no location is net positive.
std::size_t estimate_location(const SearchState& state);

// Location (1-based) to search next. Exploration instants round-robin through
// all locations; otherwise a non-null estimate is exploited, and a null
// estimate cycles evenly through locations. Advances the matching cursor.
std::size_t next_search_location(SearchState& state, const AdaptiveConfig& cfg);

// Evaluates both stopping rules against the count table; empty while neither
// lead clears the threshold.
std::optional<SearchResult> check_stop(const SearchState& state, const AdaptiveConfig& cfg);

// Full run. `observe(location)` must return a symbol drawn at that location
// (1-based). Throws HorizonExceeded if the outer safety cap is hit.
template <typename Env>
SearchResult run_search(const AdaptiveConfig& cfg, Env&& observe) {
    cfg.validate();
    const InnerTestConfig inner = cfg.inner_config();
    SearchState state(cfg);
    while (true) {
        if (state.t >= cfg.max_outer_steps)
            throw HorizonExceeded("adaptive search exceeded its outer step cap");
        const std::size_t location = next_search_location(state, cfg);
        const BinaryOutcome verdict =
            run_to_completion([&] { return observe(location); }, inner);
        state.total_samples += verdict.samples_used;
        if (verdict.decision)
            state.found[location - 1] += 1;
        else
            state.not_found[location - 1] += 1;
        state.t += 1;
        state.estimate = estimate_location(state);
        if (const auto result = check_stop(state, cfg)) return *result;
    }
}

}  // namespace searchstop
