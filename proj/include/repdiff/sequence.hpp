#pragma once

// Binary recurrences U_{n+1} = p*U_n - q*U_{n-1} with exact big-integer
// terms, their Binet data in the quadratic field of the characteristic
// roots, and the growth-envelope checks used by the proof pipeline.

#include <string>
#include <vector>

#include <gmpxx.h>

#include "repdiff/quadratic.hpp"

namespace repdiff {

struct SequenceSpec {
    mpz_class coeff_p;  // recurrence multiplier
    mpz_class coeff_q;  // recurrence subtrahend
    mpz_class u0, u1;
    std::string name;

    // Requires distinct real roots (p^2 - 4q > 0) and the strict-growth
    // conditions p >= 2, q <= p-1, u1 > u0 >= 0.
    SequenceSpec(mpz_class p, mpz_class q, mpz_class u0, mpz_class u1, std::string name);

    static const SequenceSpec& balancing();        // 0, 1, 6, 35, 204, ...
    static const SequenceSpec& lucas_balancing();  // 1, 3, 17, 99, 577, ...

    mpz_class discriminant() const { return coeff_p * coeff_p - 4 * coeff_q; }
    // Writes a non-square discriminant as mult^2 * D with D square-free.
    // Square discriminants mean rational roots: radicand() returns a dummy
    // carrier and radical_multiplier() returns 0.
    long radicand() const;
    mpz_class radical_multiplier() const;

    // Dominant and conjugate characteristic roots (p +- mult*sqrt(D)) / 2.
    QuadraticNumber alpha() const;
    QuadraticNumber beta() const;
};

// n-th term by exact integer recurrence, n >= 0.
mpz_class term(const SequenceSpec& spec, long n);

// Terms 0..n_max in one pass.
std::vector<mpz_class> terms_up_to(const SequenceSpec& spec, long n_max);

// n-th term evaluated through the closed form A*alpha^n + B*beta^n with A, B
// solved exactly from the initial terms.  The radical part must cancel; a
// non-integer result indicates a bug and throws std::logic_error.
mpz_class binet_term(const SequenceSpec& spec, long n);

// Verifies the growth envelope for 1 <= n <= n_max by exact comparison:
//   balancing shape (u0 = 0, u1 = 1):    alpha^(n-1) <= U_n < alpha^n
//   companion shape (u0 = 1, 2*u1 = p):  alpha^n < 2*U_n < alpha^(n+1)
// Other shapes are rejected with std::invalid_argument.
bool check_growth_envelope(const SequenceSpec& spec, long n_max);

}  // namespace repdiff
