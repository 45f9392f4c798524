#pragma once

// Exact arithmetic in real quadratic fields Q(sqrt(D)).
//
// Elements are stored as (a + b*sqrt(D))/c in lowest terms with c > 0.  All
// comparisons (sign, ordering, equality against integer powers) are decided
// by exact integer arithmetic, never through floating point, so the growth
// checks and non-vanishing arguments built on top of this type are proofs
// rather than numerics.  Only D = 2 is exercised by the built-in problems but
// any square-free radicand is accepted.

#include <string>

#include <gmpxx.h>

#include "repdiff/certified_real.hpp"

namespace repdiff {

class QuadraticNumber {
public:
    QuadraticNumber() : a_(0), b_(0), c_(1), radicand_(2) {}
    explicit QuadraticNumber(const mpq_class& rational, long radicand = 2);
    explicit QuadraticNumber(const mpz_class& integer, long radicand = 2);
    QuadraticNumber(mpz_class a, mpz_class b, mpz_class c, long radicand = 2);

    static QuadraticNumber sqrt_of(long radicand);

    const mpz_class& rational_num() const { return a_; }
    const mpz_class& radical_num() const { return b_; }
    const mpz_class& denominator() const { return c_; }
    long radicand() const { return radicand_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }
    bool is_one() const { return b_ == 0 && a_ == c_; }
    // Throws std::domain_error when the radical part is nonzero.
    mpq_class to_rational() const;

    QuadraticNumber conjugate() const;
    // (a^2 - D b^2)/c^2 = x * conj(x), always rational.
    mpq_class norm() const;

    QuadraticNumber operator+(const QuadraticNumber& o) const;
    QuadraticNumber operator-(const QuadraticNumber& o) const;
    QuadraticNumber operator-() const;
    QuadraticNumber operator*(const QuadraticNumber& o) const;
    QuadraticNumber operator/(const QuadraticNumber& o) const;
    QuadraticNumber inverse() const;
    QuadraticNumber pow(long exponent) const;

    bool operator==(const QuadraticNumber& o) const;
    bool operator!=(const QuadraticNumber& o) const { return !(*this == o); }

    // Exact sign: -1, 0, +1.
    int sign() const;
    // Exact three-way comparison.
    int compare(const QuadraticNumber& o) const { return (*this - o).sign(); }
    int compare(const mpq_class& r) const;

    std::string to_string() const;

private:
    void canonicalize();
    // Result radicand for a binary op; rationals mix with anything.
    long combined_radicand(const QuadraticNumber& o) const;

    mpz_class a_, b_, c_;
    long radicand_;
};

// Exact sign of x^n - y.  Supports negative n (x must be invertible).
int compare_to_integer_power(const QuadraticNumber& x, long n, const mpz_class& y);

// Enclosure of the value of x at roughly `bits` precision.
CertifiedReal enclose(const QuadraticNumber& x, long bits);

// Enclosure of ln(x); positivity of x is certified exactly before any
// numeric work.  Throws std::domain_error for x <= 0.
CertifiedReal enclose_log(const QuadraticNumber& x, long bits);

}  // namespace repdiff
