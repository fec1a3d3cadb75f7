#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "searchstop/errors.hpp"
#include "searchstop/info.hpp"
#include "searchstop/pmf.hpp"
#include "searchstop/search_result.hpp"

namespace searchstop {

// Universal non-adaptive baseline: the search order is fixed up front
// (strict round-robin), so every location accumulates the same number of
// observations. After each completed block the divergence of each location's
// empirical distribution from pi ranks the candidates; the run stops when the
// leader's divergence clears the runner-up by a growing threshold, or gives
// up and declares the target absent at the truncation horizon.

struct NonAdaptiveConfig {
    std::size_t num_locations;  // M >= 2
    double a_bar;               // threshold; must exceed e
    Pmf pi;                     // absence distribution

    void validate() const;

    // Raw-observation truncation horizon floor(a_bar * log a_bar).
    std::int64_t horizon() const;

    // The horizon rounded down to whole blocks: stopping decisions exist only
    // at block boundaries, so a trailing partial block is never taken.
    std::int64_t truncated_blocks() const {
        return horizon() / static_cast<std::int64_t>(num_locations);
    }
};

// Fixed search order: observation k (0-based) goes to location (k mod M)+1.
inline std::size_t nonadaptive_location(std::int64_t k, std::size_t num_locations) {
    return static_cast<std::size_t>(k % static_cast<std::int64_t>(num_locations)) + 1;
}

// Divergence ranking of the per-location empirical distributions against pi,
// in the scaled form n*D (every type holds the same n, so scaling preserves
// the order and turns gaps into the quantity thresholded below).
struct DivergenceRanking {
    std::size_t lead;        // 0-based location index, ties to lowest
    double lead_scaled;      // n * D(type_lead || pi)
    double runner_up_scaled; // best among the others; -inf when M = 1
};

DivergenceRanking rank_by_divergence(const std::vector<EmpiricalType>& types, const Pmf& pi);

// Location (1-based) whose empirical distribution is farthest from pi in
// relative entropy; ties to the lowest index. Types must all be non-empty.
inline std::size_t farthest_from_absence(const std::vector<EmpiricalType>& types,
                                         const Pmf& pi) {
    return rank_by_divergence(types, pi).lead + 1;
}

// Full run. `observe(location)` must return a symbol drawn at that location
// (1-based).
template <typename Env>
SearchResult nonadaptive_run(const NonAdaptiveConfig& cfg, Env&& observe) {
    cfg.validate();
    const std::size_t m = cfg.num_locations;
    const double log_a_bar = std::log(cfg.a_bar);
    const double per_block_penalty =
        static_cast<double>(m) * static_cast<double>(cfg.pi.size());
    std::vector<EmpiricalType> types(m, EmpiricalType(cfg.pi.size()));

    const std::int64_t blocks = cfg.truncated_blocks();
    for (std::int64_t block = 1; block <= blocks; ++block) {
        for (std::size_t u = 1; u <= m; ++u) types[u - 1].add(observe(u));
        const DivergenceRanking rank = rank_by_divergence(types, cfg.pi);
        const double bar =
            log_a_bar + per_block_penalty * std::log(static_cast<double>(block) + 1.0);
        if (rank.lead_scaled - rank.runner_up_scaled > bar)
            return SearchResult{rank.lead + 1, block, block * static_cast<std::int64_t>(m),
                                StopBranch::target_found};
    }
    return SearchResult{0, blocks, blocks * static_cast<std::int64_t>(m),
                        StopBranch::target_missing};
}

}  // namespace searchstop
