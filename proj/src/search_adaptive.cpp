#include "searchstop/search_adaptive.hpp"

#include <algorithm>
#include <cmath>

namespace searchstop {

void AdaptiveConfig::validate() const {
    if (num_locations < 2) throw ConfigError("adaptive search needs >= 2 locations");
    if (!(a > 5.0)) throw ConfigError("adaptive search threshold a must exceed 5");
    if (!(rho2 > 1.0)) throw ConfigError("adaptive search exponent rho2 must exceed 1");
    if (!(b > 0.0)) throw ConfigError("adaptive search exploration rate must be positive");
    if (max_outer_steps < 1) throw ConfigError("adaptive search step cap must be >= 1");
    inner_config().validate();  // covers rho1 and pi
}

double AdaptiveConfig::outer_exponent() const {
    return std::pow(a, rho2) * std::pow(std::log(a), rho1);
}

double AdaptiveConfig::outer_threshold() const {
    return outer_exponent() / std::log(a - 1.0);
}

std::size_t estimate_location(const SearchState& state) {
    std::size_t best = 0;
    std::int64_t best_diff = 0;
    for (std::size_t i = 0; i < state.found.size(); ++i) {
        const std::int64_t diff = state.found[i] - state.not_found[i];
        if (diff > best_diff) {
            best_diff = diff;
            best = i + 1;
        }
    }
    return best;  // 0 unless some location is strictly net positive
}

std::size_t next_search_location(SearchState& state, const AdaptiveConfig& cfg) {
    const std::int64_t m = static_cast<std::int64_t>(cfg.num_locations);
    if (state.schedule.claims(state.t + 1)) {
        const std::size_t location =
            static_cast<std::size_t>(state.exploration_counter % m) + 1;
        state.exploration_counter += 1;
        return location;
    }
    if (state.estimate != 0) return state.estimate;
    const std::size_t location = state.last_null_location % cfg.num_locations + 1;
    state.last_null_location = location;
    return location;
}

std::optional<SearchResult> check_stop(const SearchState& state, const AdaptiveConfig& cfg) {
    const double level = cfg.outer_threshold();
    if (state.estimate != 0) {
        const std::size_t i = state.estimate - 1;
        const std::int64_t lead = state.found[i] - state.not_found[i];
        // Worst margin over rivals: hypothesis "absent" sits at difference 0,
        // so the lead itself is the margin against it.
        std::int64_t margin = lead;
        for (std::size_t j = 0; j < state.found.size(); ++j) {
            if (j == i) continue;
            margin = std::min(margin, lead - (state.found[j] - state.not_found[j]));
        }
        if (static_cast<double>(margin) > level)
            return SearchResult{state.estimate, state.t, state.total_samples,
                                StopBranch::target_found};
        return std::nullopt;
    }
    std::int64_t weakest = state.not_found[0] - state.found[0];
    for (std::size_t i = 1; i < state.found.size(); ++i)
        weakest = std::min(weakest, state.not_found[i] - state.found[i]);
    if (static_cast<double>(weakest) > level)
        return SearchResult{0, state.t, state.total_samples, StopBranch::target_missing};
    return std::nullopt;
}

}  // namespace searchstop
