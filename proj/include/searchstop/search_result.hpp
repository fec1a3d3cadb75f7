#pragma once

#include <cstdint>

namespace searchstop {

// Which stopping rule fired: the "decided a location" branch or the
// "decided the target is missing" branch.
enum class StopBranch { target_found, target_missing };

struct SearchResult {
    std::size_t decision;       // 0 = target absent, 1..M = location
    std::int64_t outer_time;    // completed controller steps (inner tests / blocks)
    std::int64_t total_samples; // raw observations consumed
    StopBranch stop_branch;
};

}  // namespace searchstop
