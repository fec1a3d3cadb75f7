#include "searchstop/search_nonadaptive.hpp"

#include <cmath>
#include <limits>

namespace searchstop {

void NonAdaptiveConfig::validate() const {
    constexpr double e = 2.718281828459045;
    if (num_locations < 2) throw ConfigError("non-adaptive search needs >= 2 locations");
    if (!(a_bar > e)) throw ConfigError("non-adaptive threshold a_bar must exceed e");
    if (pi.size() < 2) throw ConfigError("non-adaptive search alphabet needs at least 2 symbols");
    pi.require_full_support();
}

std::int64_t NonAdaptiveConfig::horizon() const {
    const double h = a_bar * std::log(a_bar);
    // Saturate far beyond any reachable sample count instead of overflowing.
    if (h >= 9.0e18) return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(h);
}

DivergenceRanking rank_by_divergence(const std::vector<EmpiricalType>& types, const Pmf& pi) {
    if (types.empty()) throw ConfigError("divergence ranking of an empty location list");
    DivergenceRanking rank{0, -std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < types.size(); ++i) {
        const double value = scaled_kl(types[i], pi);
        if (value > rank.lead_scaled) {
            rank.runner_up_scaled = rank.lead_scaled;
            rank.lead_scaled = value;
            rank.lead = i;
        } else if (value > rank.runner_up_scaled) {
            rank.runner_up_scaled = value;
        }
    }
    return rank;
}

}  // namespace searchstop
