#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "searchstop/errors.hpp"

namespace searchstop {

// Sparse deterministic exploration clock: fires at the distinct values of
// floor(e^(b*k)) for k = 0, 1, 2, ...  Because consecutive floors coincide for
// small rates, duplicates are skipped so each time index is claimed at most
// once; the number of firings up to time t is O(log t).  Time 1 always fires
// (k = 0 gives floor(e^0) = 1).
class ExplorationSchedule {
public:
    explicit ExplorationSchedule(double rate) : rate_(rate) {
        if (!(rate > 0.0)) throw ConfigError("exploration rate must be positive");
        next_ = value_at(0);
    }

    // True when the given time index is an exploration instant; advances the
    // clock past it.  Must be called with non-decreasing t.
    bool claims(std::int64_t t) {
        if (t < next_) return false;
        advance();
        return true;
    }

    std::int64_t next_time() const noexcept { return next_; }

    // How many instants fired so far (equals the number of true claims()).
    std::int64_t fired() const noexcept { return k_distinct_; }

private:
    void advance() {
        ++k_distinct_;
        const std::int64_t prev = next_;
        while (true) {
            ++k_;
            const std::int64_t v = value_at(k_);
            if (v > prev) { next_ = v; return; }
        }
    }

    std::int64_t value_at(std::int64_t k) const {
        const double v = std::exp(rate_ * static_cast<double>(k));
        // Past ~9e18 the schedule can never fire again within int64 time.
        if (v >= 9.0e18) return std::numeric_limits<std::int64_t>::max();
        return static_cast<std::int64_t>(v);
    }

    double rate_;
    std::int64_t k_ = 0;           // exponent of the most recently emitted value
    std::int64_t k_distinct_ = 0;  // count of distinct instants emitted
    std::int64_t next_ = 0;        // next pending instant
};

}  // namespace searchstop
