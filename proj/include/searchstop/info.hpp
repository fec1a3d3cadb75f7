#pragma once

#include <cstdint>

#include "searchstop/pmf.hpp"

namespace searchstop {

// Information measures over finite alphabets. All results are in nats, and
// the conventions 0*log(0) = 0 and 0*log(0/0) = 0 apply throughout.

// Shannon entropy H(gamma).
double entropy(const Pmf& gamma);

// Relative entropy D(gamma || p). Throws AbsoluteContinuityViolation if gamma
// puts mass on a symbol where p is zero.
double kl_divergence(const Pmf& gamma, const Pmf& p);

// D(type/n || p) for a non-empty type.
double kl_divergence(const EmpiricalType& type, const Pmf& p);

// n * D(type/n || p), computed directly from counts. Cheaper and better
// conditioned than scaling kl_divergence when n is what multiplies it anyway.
double scaled_kl(const EmpiricalType& type, const Pmf& p);

// log p(y^n) for any sequence y^n with the given type:
// sum_y count(y) * log p(y). Equals -n * (D(type/n || p) + H(type/n)).
double sequence_log_prob(const EmpiricalType& type, const Pmf& p);

// The largest value sequence_log_prob(type, q) can take over all q, attained
// at q = type/n: equals -n * H(type/n).
double max_type_log_prob(const EmpiricalType& type);

// Upper bound on P[D(empirical type of n iid draws from p || p) >= epsilon]:
// (n+1)^|Y| * exp(-n * epsilon). Valid for every p over the alphabet.
double type_deviation_bound(std::int64_t n, std::size_t alphabet_size, double epsilon);

// Bhattacharyya distance -log sum_y sqrt(mu(y) pi(y)). Satisfies
// 2 B(mu, pi) = min_q [ D(q||mu) + D(q||pi) ], minimized at q ∝ sqrt(mu pi).
double bhattacharyya(const Pmf& mu, const Pmf& pi);

}  // namespace searchstop
