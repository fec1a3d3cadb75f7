#include "searchstop/pmf.hpp"

#include <cmath>
#include <string>

namespace searchstop {

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw ConfigError("pmf must have at least one entry");
    double sum = 0.0;
    for (double p : probs_) {
        if (!std::isfinite(p)) throw ConfigError("pmf entries must be finite");
        if (p < 0.0) throw ConfigError("pmf entries must be non-negative (got " + std::to_string(p) + ")");
        sum += p;
    }
    if (std::abs(sum - 1.0) > sum_tolerance)
        throw ConfigError("pmf entries must sum to 1 within " + std::to_string(sum_tolerance) +
                          " (got sum " + std::to_string(sum) + ")");
    for (double& p : probs_) p /= sum;
}

bool Pmf::full_support(double floor) const noexcept {
    for (double p : probs_)
        if (p < floor) return false;
    return true;
}

void Pmf::require_full_support(double floor) const {
    if (!full_support(floor))
        throw ConfigError("pmf must have full support (every entry >= " + std::to_string(floor) + ")");
}

double Pmf::total_variation(const Pmf& other) const {
    if (other.size() != size()) throw ConfigError("total variation requires matching alphabets");
    double s = 0.0;
    for (std::size_t y = 0; y < size(); ++y) s += std::abs(probs_[y] - other.probs_[y]);
    return 0.5 * s;
}

EmpiricalType::EmpiricalType(std::vector<std::int64_t> c) : counts(std::move(c)) {
    for (std::int64_t v : counts) {
        if (v < 0) throw ConfigError("type counts must be non-negative");
        n += v;
    }
}

Pmf EmpiricalType::normalized() const {
    if (n < 1) throw ConfigError("cannot normalize an empty type");
    std::vector<double> p(counts.size());
    for (std::size_t y = 0; y < counts.size(); ++y)
        p[y] = static_cast<double>(counts[y]) / static_cast<double>(n);
    return Pmf(std::move(p));
}

}  // namespace searchstop
