#include "repdiff/quadratic.hpp"

#include <algorithm>
#include <stdexcept>

#include <mpfr.h>

namespace repdiff {

namespace {

void check_radicand(long d) {
    if (d < 2) throw std::invalid_argument("radicand must be >= 2");
    // Square-free check by trial division; radicands are small configuration
    // constants, not data.
    long n = d;
    for (long p = 2; p * p <= n; ++p) {
        long count = 0;
        while (n % p == 0) {
            n /= p;
            ++count;
        }
        if (count > 1) throw std::invalid_argument("radicand must be square-free");
    }
}

mpq_class mpq_from_mpfr(const mpfr_t x) {
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, x);
    mpq_class out(q);
    mpq_clear(q);
    return out;
}

// Rational enclosure of sqrt(d) at the given precision.
CertifiedReal enclose_sqrt(long d, long bits) {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max(bits, 32L) + 8);
    mpfr_t r;
    mpfr_init2(r, prec);
    mpfr_sqrt_ui(r, static_cast<unsigned long>(d), MPFR_RNDD);
    mpq_class lo = mpq_from_mpfr(r);
    mpfr_sqrt_ui(r, static_cast<unsigned long>(d), MPFR_RNDU);
    mpq_class hi = mpq_from_mpfr(r);
    mpfr_clear(r);
    return {std::move(lo), std::move(hi)};
}

}  // namespace

QuadraticNumber::QuadraticNumber(const mpq_class& rational, long radicand)
    : a_(rational.get_num()), b_(0), c_(rational.get_den()), radicand_(radicand) {
    check_radicand(radicand_);
    canonicalize();
}

QuadraticNumber::QuadraticNumber(const mpz_class& integer, long radicand)
    : a_(integer), b_(0), c_(1), radicand_(radicand) {
    check_radicand(radicand_);
}

QuadraticNumber::QuadraticNumber(mpz_class a, mpz_class b, mpz_class c, long radicand)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), radicand_(radicand) {
    check_radicand(radicand_);
    if (c_ == 0) throw std::invalid_argument("QuadraticNumber: zero denominator");
    canonicalize();
}

QuadraticNumber QuadraticNumber::sqrt_of(long radicand) {
    return QuadraticNumber(mpz_class(0), mpz_class(1), mpz_class(1), radicand);
}

void QuadraticNumber::canonicalize() {
    if (c_ < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
    }
}

long QuadraticNumber::combined_radicand(const QuadraticNumber& o) const {
    if (radicand_ == o.radicand_) return radicand_;
    if (b_ == 0) return o.radicand_;
    if (o.b_ == 0) return radicand_;
    throw std::invalid_argument("QuadraticNumber: mixed radicands " + std::to_string(radicand_) +
                                " and " + std::to_string(o.radicand_));
}

mpq_class QuadraticNumber::to_rational() const {
    if (b_ != 0) throw std::domain_error("QuadraticNumber: not rational: " + to_string());
    mpq_class r(a_, c_);
    r.canonicalize();
    return r;
}

QuadraticNumber QuadraticNumber::conjugate() const {
    return QuadraticNumber(a_, -b_, c_, radicand_);
}

mpq_class QuadraticNumber::norm() const {
    mpq_class n(a_ * a_ - radicand_ * b_ * b_, c_ * c_);
    n.canonicalize();
    return n;
}

QuadraticNumber QuadraticNumber::operator+(const QuadraticNumber& o) const {
    long d = combined_radicand(o);
    return QuadraticNumber(a_ * o.c_ + o.a_ * c_, b_ * o.c_ + o.b_ * c_, c_ * o.c_, d);
}

QuadraticNumber QuadraticNumber::operator-(const QuadraticNumber& o) const { return *this + (-o); }

QuadraticNumber QuadraticNumber::operator-() const {
    return QuadraticNumber(-a_, -b_, c_, radicand_);
}

QuadraticNumber QuadraticNumber::operator*(const QuadraticNumber& o) const {
    long d = combined_radicand(o);
    return QuadraticNumber(a_ * o.a_ + mpz_class(d) * b_ * o.b_, a_ * o.b_ + b_ * o.a_, c_ * o.c_, d);
}

QuadraticNumber QuadraticNumber::inverse() const {
    if (is_zero()) throw std::domain_error("QuadraticNumber: division by zero");
    // 1/x = conj(x) / norm(x); norm is nonzero since D is not a square.
    mpz_class norm_num = a_ * a_ - radicand_ * b_ * b_;
    return QuadraticNumber(a_ * c_, -b_ * c_, norm_num, radicand_);
}

QuadraticNumber QuadraticNumber::operator/(const QuadraticNumber& o) const {
    long d = combined_radicand(o);
    (void)d;
    return *this * o.inverse();
}

QuadraticNumber QuadraticNumber::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    QuadraticNumber result(mpz_class(1), radicand_);
    QuadraticNumber base = *this;
    unsigned long e = static_cast<unsigned long>(exponent);
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

bool QuadraticNumber::operator==(const QuadraticNumber& o) const {
    if (a_ != o.a_ || b_ != o.b_ || c_ != o.c_) return false;
    return b_ == 0 || radicand_ == o.radicand_;
}

int QuadraticNumber::sign() const {
    int sa = mpz_sgn(a_.get_mpz_t());
    int sb = mpz_sgn(b_.get_mpz_t());
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with D b^2 (the sign follows the larger
    // magnitude side).
    mpz_class lhs = a_ * a_;
    mpz_class rhs = mpz_class(radicand_) * b_ * b_;
    int cmp = mpz_cmp(lhs.get_mpz_t(), rhs.get_mpz_t());
    if (cmp == 0) return 0;  // impossible for square-free D with b != 0, kept for safety
    return cmp > 0 ? sa : sb;
}

int QuadraticNumber::compare(const mpq_class& r) const {
    return (*this - QuadraticNumber(r, radicand_)).sign();
}

std::string QuadraticNumber::to_string() const {
    std::string radical = "sqrt" + std::to_string(radicand_);
    if (b_ == 0) {
        if (c_ == 1) return a_.get_str();
        return a_.get_str() + "/" + c_.get_str();
    }
    std::string num;
    {
        std::string bpart = (b_ == 1 ? "" : b_ == -1 ? "-" : b_.get_str() + "*") + radical;
        if (a_ == 0)
            num = bpart;
        else
            num = a_.get_str() + (b_ > 0 ? "+" : "") + bpart;
    }
    if (c_ == 1) return num;
    return "(" + num + ")/" + c_.get_str();
}

int compare_to_integer_power(const QuadraticNumber& x, long n, const mpz_class& y) {
    QuadraticNumber lhs = x.pow(n);
    return lhs.compare(mpq_class(y));
}

CertifiedReal enclose(const QuadraticNumber& x, long bits) {
    mpq_class rational_part(x.rational_num(), x.denominator());
    rational_part.canonicalize();
    if (x.radical_num() == 0) return CertifiedReal(rational_part);

    CertifiedReal root = enclose_sqrt(x.radicand(), bits);
    mpq_class b_over_c(x.radical_num(), x.denominator());
    b_over_c.canonicalize();
    CertifiedReal radical_part = CertifiedReal(b_over_c) * root;
    return CertifiedReal(rational_part) + radical_part;
}

CertifiedReal enclose_log(const QuadraticNumber& x, long bits) {
    if (x.sign() <= 0) throw std::domain_error("enclose_log: argument must be positive: " + x.to_string());
    if (x.is_rational()) return enclose_log(x.to_rational(), bits);
    long work = std::max(bits, 32L);
    for (int attempt = 0; attempt < 64; ++attempt) {
        CertifiedReal value = enclose(x, work);
        if (value.lo() > 0) return enclose_log(value, work);
        work *= 2;  // enclosure of a tiny positive value dipped below zero
    }
    throw std::logic_error("enclose_log: failed to isolate positive value of " + x.to_string());
}

}  // namespace repdiff
