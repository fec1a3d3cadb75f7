#include "searchstop/inner_test.hpp"

#include <cmath>
#include <limits>

#include "searchstop/errors.hpp"

namespace searchstop {

void InnerTestConfig::validate() const {
    constexpr double e = 2.718281828459045;
    if (!(a > e)) throw ConfigError("inner test threshold a must exceed e");
    if (!(rho1 > 1.0)) throw ConfigError("inner test exponent rho1 must exceed 1");
    if (pi.size() < 2) throw ConfigError("inner test alphabet needs at least 2 symbols");
    pi.require_full_support();
}

std::int64_t InnerTestConfig::horizon() const {
    const double h = a * std::pow(std::log(a), rho1);
    // Saturate far beyond any reachable sample count instead of overflowing.
    if (h >= 9.0e18) return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(h);
}

double threshold_at(std::int64_t n, const InnerTestConfig& cfg) {
    const double nd = static_cast<double>(n);
    return std::log(cfg.a) + std::pow(nd, 2.0 / 3.0) +
           static_cast<double>(cfg.alphabet_size()) * std::log(nd + 1.0);
}

BinaryTestRun::BinaryTestRun(const InnerTestConfig& cfg)
    : cfg_(&cfg), type_(cfg.pi.size()), horizon_(cfg.horizon()) {}

void BinaryTestRun::step(std::size_t symbol) {
    if (status_ != RunStatus::running)
        throw StepAfterStop("step() on a finished binary test");
    type_.add(symbol);
    if (scaled_kl(type_, cfg_->pi) > threshold_at(type_.n, *cfg_)) {
        status_ = RunStatus::stopped_crossed;
    } else if (type_.n >= horizon_) {
        status_ = RunStatus::stopped_truncated;
    }
}

BinaryOutcome BinaryTestRun::outcome() const {
    if (status_ == RunStatus::running)
        throw Error("outcome() on a running binary test");
    return {status_ == RunStatus::stopped_crossed, type_.n};
}

}  // namespace searchstop
