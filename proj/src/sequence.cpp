#include "repdiff/sequence.hpp"

#include <stdexcept>

namespace repdiff {

SequenceSpec::SequenceSpec(mpz_class p, mpz_class q, mpz_class u0_in, mpz_class u1_in,
                           std::string name_in)
    : coeff_p(std::move(p)), coeff_q(std::move(q)), u0(std::move(u0_in)), u1(std::move(u1_in)),
      name(std::move(name_in)) {
    if (discriminant() <= 0)
        throw std::invalid_argument("SequenceSpec '" + name + "': characteristic roots not real and distinct");
    if (coeff_p < 2) throw std::invalid_argument("SequenceSpec '" + name + "': coeff_p must be >= 2");
    if (coeff_q > coeff_p - 1)
        throw std::invalid_argument("SequenceSpec '" + name +
                                    "': coeff_q must be at most coeff_p - 1 for strictly increasing terms");
    if (!(u1 > u0 && u0 >= 0))
        throw std::invalid_argument("SequenceSpec '" + name + "': initial terms must satisfy u1 > u0 >= 0");
}

const SequenceSpec& SequenceSpec::balancing() {
    static const SequenceSpec spec(6, 1, 0, 1, "balancing");
    return spec;
}

const SequenceSpec& SequenceSpec::lucas_balancing() {
    static const SequenceSpec spec(6, 1, 1, 3, "lucas_balancing");
    return spec;
}

long SequenceSpec::radicand() const {
    mpz_class disc = discriminant();
    mpz_class square_free = disc;
    mpz_class factor = 2;
    // Pull out square factors; discriminants here are small configuration
    // values, so trial division is fine.
    while (factor * factor <= square_free) {
        mpz_class sq = factor * factor;
        while (square_free % sq == 0) square_free /= sq;
        ++factor;
    }
    // A square discriminant means rational roots; the radical parts are all
    // zero then and any valid radicand serves as the carrier.
    if (square_free == 1) return 2;
    if (!square_free.fits_slong_p())
        throw std::invalid_argument("SequenceSpec: discriminant radicand too large");
    return square_free.get_si();
}

mpz_class SequenceSpec::radical_multiplier() const {
    mpz_class disc = discriminant();
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
    if (root * root == disc) return 0;  // rational roots, no radical part
    mpz_class mult_sq = disc / radicand();
    mpz_class mult;
    mpz_sqrt(mult.get_mpz_t(), mult_sq.get_mpz_t());
    if (mult * mult != mult_sq) throw std::logic_error("SequenceSpec: radicand decomposition failed");
    return mult;
}

QuadraticNumber SequenceSpec::alpha() const {
    mpz_class disc = discriminant();
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
    if (root * root == disc)
        return QuadraticNumber(coeff_p + root, mpz_class(0), mpz_class(2), radicand());
    return QuadraticNumber(coeff_p, radical_multiplier(), 2, radicand());
}

QuadraticNumber SequenceSpec::beta() const {
    mpz_class disc = discriminant();
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
    if (root * root == disc)
        return QuadraticNumber(coeff_p - root, mpz_class(0), mpz_class(2), radicand());
    return QuadraticNumber(coeff_p, -radical_multiplier(), 2, radicand());
}

mpz_class term(const SequenceSpec& spec, long n) {
    if (n < 0) throw std::invalid_argument("term: index must be >= 0");
    if (n == 0) return spec.u0;
    mpz_class prev = spec.u0, curr = spec.u1;
    for (long i = 1; i < n; ++i) {
        mpz_class next = spec.coeff_p * curr - spec.coeff_q * prev;
        prev = std::move(curr);
        curr = std::move(next);
    }
    return curr;
}

std::vector<mpz_class> terms_up_to(const SequenceSpec& spec, long n_max) {
    if (n_max < 0) throw std::invalid_argument("terms_up_to: index must be >= 0");
    std::vector<mpz_class> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    out.push_back(spec.u0);
    if (n_max == 0) return out;
    out.push_back(spec.u1);
    for (long i = 2; i <= n_max; ++i)
        out.push_back(spec.coeff_p * out[i - 1] - spec.coeff_q * out[i - 2]);
    return out;
}

mpz_class binet_term(const SequenceSpec& spec, long n) {
    if (n < 0) throw std::invalid_argument("binet_term: index must be >= 0");
    QuadraticNumber alpha = spec.alpha();
    QuadraticNumber beta = spec.beta();
    QuadraticNumber root_gap = alpha - beta;  // mult * sqrt(D)
    QuadraticNumber u0(mpq_class(spec.u0));
    QuadraticNumber u1(mpq_class(spec.u1));
    // Solve u0 = A + B, u1 = A*alpha + B*beta.
    QuadraticNumber coeff_a = (u1 - u0 * beta) / root_gap;
    QuadraticNumber coeff_b = u0 - coeff_a;

    QuadraticNumber value = coeff_a * alpha.pow(n) + coeff_b * beta.pow(n);
    if (!value.is_rational())
        throw std::logic_error("binet_term: radical part failed to cancel at n=" + std::to_string(n));
    mpq_class rational = value.to_rational();
    if (rational.get_den() != 1)
        throw std::logic_error("binet_term: non-integer value at n=" + std::to_string(n));
    return rational.get_num();
}

bool check_growth_envelope(const SequenceSpec& spec, long n_max) {
    if (n_max < 1) throw std::invalid_argument("check_growth_envelope: n_max must be >= 1");
    bool balancing_shape = (spec.u0 == 0 && spec.u1 == 1);
    bool companion_shape = (spec.u0 == 1 && 2 * spec.u1 == spec.coeff_p);
    if (!balancing_shape && !companion_shape)
        throw std::invalid_argument("check_growth_envelope: unsupported sequence shape '" + spec.name + "'");

    QuadraticNumber alpha = spec.alpha();
    QuadraticNumber prev_power(mpz_class(1), alpha.radicand());  // alpha^(n-1)
    QuadraticNumber curr_power = alpha;                          // alpha^n
    std::vector<mpz_class> terms = terms_up_to(spec, n_max);
    for (long n = 1; n <= n_max; ++n) {
        QuadraticNumber next_power = curr_power * alpha;
        if (balancing_shape) {
            // alpha^(n-1) <= U_n < alpha^n
            if (prev_power.compare(mpq_class(terms[n])) > 0) return false;
            if (curr_power.compare(mpq_class(terms[n])) <= 0) return false;
        } else {
            // alpha^n < 2*U_n < alpha^(n+1)
            mpq_class doubled(2 * terms[n]);
            if (curr_power.compare(doubled) >= 0) return false;
            if (next_power.compare(doubled) <= 0) return false;
        }
        prev_power = std::move(curr_power);
        curr_power = std::move(next_power);
    }
    return true;
}

}  // namespace repdiff
