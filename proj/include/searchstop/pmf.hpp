#pragma once

#include <cstdint>
#include <vector>

#include "searchstop/errors.hpp"

namespace searchstop {

// Probability vector over a finite alphabet {0, ..., k-1}. Immutable once built.
//
// Construction accepts vectors whose entries are finite and non-negative and
// whose sum is within `sum_tolerance` of 1; the input is then renormalized so
// downstream arithmetic can assume an exact unit sum. Larger deviations are
// rejected rather than silently scaled away.
class Pmf {
public:
    static constexpr double sum_tolerance = 1e-9;
    static constexpr double default_support_floor = 1e-9;

    // Empty placeholder (size 0); every consumer validates sizes before use.
    Pmf() = default;

    explicit Pmf(std::vector<double> probs);

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t y) const { return probs_[y]; }
    const std::vector<double>& probs() const noexcept { return probs_; }

    // True iff every entry is at least `floor`.
    bool full_support(double floor = default_support_floor) const noexcept;
    // Throws ConfigError unless full_support(floor).
    void require_full_support(double floor = default_support_floor) const;

    double total_variation(const Pmf& other) const;

    bool operator==(const Pmf&) const = default;

private:
    std::vector<double> probs_;
};

// Symbol counts of a finite observation sequence; n is the sequence length.
struct EmpiricalType {
    std::vector<std::int64_t> counts;
    std::int64_t n = 0;

    EmpiricalType() = default;
    explicit EmpiricalType(std::size_t alphabet_size) : counts(alphabet_size, 0) {}
    // Validates that all counts are non-negative.
    explicit EmpiricalType(std::vector<std::int64_t> c);

    std::size_t alphabet_size() const noexcept { return counts.size(); }

    void add(std::size_t symbol) {
        counts.at(symbol) += 1;
        n += 1;
    }

    // The empirical distribution counts/n. Requires n >= 1.
    Pmf normalized() const;
};

}  // namespace searchstop
