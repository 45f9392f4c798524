#pragma once

// Test-only oracles, independent of the library's evaluation paths.
//
// oracle_log computes ln through argument reduction to [3/4, 3/2) and the
// atanh series 2*sum t^(2j+1)/(2j+1), entirely in exact rational arithmetic
// with an explicit geometric tail bound, so it shares no code (and no
// rounding machinery) with the mpfr-backed enclose_log it cross-checks.

#include <random>

#include <gmpxx.h>

#include "repdiff/certified_real.hpp"

namespace oracles {

inline repdiff::CertifiedReal atanh_series(const mpq_class& t, int terms) {
    mpq_class sum = 0;
    mpq_class power = t;
    mpq_class t_squared = t * t;
    for (int j = 0; j < terms; ++j) {
        sum += 2 * power / (2 * j + 1);
        power *= t_squared;
    }
    // |R| <= 2|t|^(2K+1) / ((2K+1)(1 - t^2)); `power` is t^(2K+1) here.
    mpq_class tail = 2 * abs(power) / ((2 * terms + 1) * (1 - t_squared));
    return {sum - tail, sum + tail};
}

inline repdiff::CertifiedReal oracle_ln2() {
    static const repdiff::CertifiedReal value = atanh_series(mpq_class(1, 3), 60);
    return value;
}

inline repdiff::CertifiedReal oracle_log(mpq_class x, int terms = 50) {
    if (x <= 0) throw std::domain_error("oracle_log: positive argument required");
    long exponent = 0;
    while (x >= mpq_class(3, 2)) {
        x /= 2;
        ++exponent;
    }
    while (x < mpq_class(3, 4)) {
        x *= 2;
        --exponent;
    }
    mpq_class t = (x - 1) / (x + 1);
    repdiff::CertifiedReal series = atanh_series(t, terms);
    return series + oracle_ln2() * repdiff::CertifiedReal(mpq_class(exponent));
}

// Rational bracket s_lo < sqrt(d) < s_hi with ~60 decimal digits.
inline std::pair<mpq_class, mpq_class> sqrt_bracket(long d) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, 60);
    mpz_class target = d * scale * scale;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), target.get_mpz_t());
    mpq_class lo(root, scale);
    mpq_class hi(root + 1, scale);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

// Enclosure of ln(a + b*sqrt(d)) for rational a, b >= 0 via the bracket.
inline repdiff::CertifiedReal oracle_log_quadratic(const mpq_class& a, const mpq_class& b, long d) {
    auto [s_lo, s_hi] = sqrt_bracket(d);
    return {oracle_log(a + b * s_lo).lo(), oracle_log(a + b * s_hi).hi()};
}

// Deterministic random rationals with numerators/denominators below `bound`.
class RationalSource {
public:
    explicit RationalSource(std::uint64_t seed, long bound = 10000)
        : engine_(seed), numerator_(-bound, bound), denominator_(1, bound) {}

    mpq_class next() {
        mpq_class q(numerator_(engine_), denominator_(engine_));
        q.canonicalize();
        return q;
    }

    mpq_class next_positive() {
        mpq_class q = next();
        if (q == 0) return mpq_class(1, 7);
        return q > 0 ? q : mpq_class(-q);
    }

    long next_int(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(engine_);
    }

private:
    std::mt19937_64 engine_;
    std::uniform_int_distribution<long> numerator_;
    std::uniform_int_distribution<long> denominator_;
};

// Outward-rounds an exact rational to a dyadic interval of the given width
// scale, producing a genuine non-point enclosure for containment tests.
inline repdiff::CertifiedReal fuzz_enclosure(const mpq_class& x, long bits) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(bits));
    mpq_class lo(repdiff::floor_rational(x * scale), scale);
    mpq_class hi(repdiff::ceil_rational(x * scale), scale);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

}  // namespace oracles
