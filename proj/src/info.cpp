#include "searchstop/info.hpp"

#include <cmath>
#include <string>

namespace searchstop {

namespace {

void require_matching_alphabets(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw ConfigError(std::string(what) + " requires matching alphabets");
}

}  // namespace

double entropy(const Pmf& gamma) {
    double h = 0.0;
    for (double g : gamma.probs())
        if (g > 0.0) h -= g * std::log(g);
    return h < 0.0 ? 0.0 : h;  // clip float dust on degenerate inputs
}

double kl_divergence(const Pmf& gamma, const Pmf& p) {
    require_matching_alphabets(gamma.size(), p.size(), "kl_divergence");
    double d = 0.0;
    for (std::size_t y = 0; y < gamma.size(); ++y) {
        const double g = gamma[y];
        if (g == 0.0) continue;
        if (p[y] == 0.0)
            throw AbsoluteContinuityViolation("kl_divergence: gamma puts mass on symbol " +
                                              std::to_string(y) + " where p is zero");
        d += g * std::log(g / p[y]);
    }
    return d < 0.0 ? 0.0 : d;
}

double kl_divergence(const EmpiricalType& type, const Pmf& p) {
    if (type.n < 1) throw ConfigError("kl_divergence needs a non-empty type");
    return scaled_kl(type, p) / static_cast<double>(type.n);
}

double scaled_kl(const EmpiricalType& type, const Pmf& p) {
    require_matching_alphabets(type.alphabet_size(), p.size(), "scaled_kl");
    if (type.n < 1) throw ConfigError("scaled_kl needs a non-empty type");
    // n D(c/n || p) = sum_y c_y log c_y - n log n - sum_y c_y log p_y
    const double n = static_cast<double>(type.n);
    double s = -n * std::log(n);
    for (std::size_t y = 0; y < type.counts.size(); ++y) {
        const std::int64_t c = type.counts[y];
        if (c == 0) continue;
        if (p[y] == 0.0)
            throw AbsoluteContinuityViolation("scaled_kl: type puts mass on symbol " +
                                              std::to_string(y) + " where p is zero");
        s += static_cast<double>(c) * (std::log(static_cast<double>(c)) - std::log(p[y]));
    }
    return s < 0.0 ? 0.0 : s;
}

double sequence_log_prob(const EmpiricalType& type, const Pmf& p) {
    require_matching_alphabets(type.alphabet_size(), p.size(), "sequence_log_prob");
    double s = 0.0;
    for (std::size_t y = 0; y < type.counts.size(); ++y) {
        const std::int64_t c = type.counts[y];
        if (c == 0) continue;
        if (p[y] == 0.0)
            throw AbsoluteContinuityViolation("sequence_log_prob: sequence uses symbol " +
                                              std::to_string(y) + " that p excludes");
        s += static_cast<double>(c) * std::log(p[y]);
    }
    return s;
}

double max_type_log_prob(const EmpiricalType& type) {
    if (type.n < 1) throw ConfigError("max_type_log_prob needs a non-empty type");
    // -n H(c/n) = sum_y c_y log(c_y / n)
    const double n = static_cast<double>(type.n);
    double s = 0.0;
    for (const std::int64_t c : type.counts)
        if (c > 0) s += static_cast<double>(c) * std::log(static_cast<double>(c) / n);
    return s > 0.0 ? 0.0 : s;
}

double type_deviation_bound(std::int64_t n, std::size_t alphabet_size, double epsilon) {
    if (n < 1) throw ConfigError("type_deviation_bound needs n >= 1");
    if (alphabet_size < 2) throw ConfigError("type_deviation_bound needs an alphabet of size >= 2");
    if (epsilon < 0.0) throw ConfigError("type_deviation_bound needs epsilon >= 0");
    return std::pow(static_cast<double>(n) + 1.0, static_cast<double>(alphabet_size)) *
           std::exp(-static_cast<double>(n) * epsilon);
}

double bhattacharyya(const Pmf& mu, const Pmf& pi) {
    require_matching_alphabets(mu.size(), pi.size(), "bhattacharyya");
    double s = 0.0;
    for (std::size_t y = 0; y < mu.size(); ++y) s += std::sqrt(mu[y] * pi[y]);
    if (s <= 0.0)
        throw AbsoluteContinuityViolation("bhattacharyya: distributions have disjoint support");
    const double b = -std::log(s);
    return b < 0.0 ? 0.0 : b;
}

}  // namespace searchstop
