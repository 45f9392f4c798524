#include "repdiff/heights.hpp"

#include <stdexcept>

namespace repdiff {

std::vector<mpz_class> minimal_polynomial(const QuadraticNumber& x) {
    if (x.is_rational()) {
        mpq_class r = x.to_rational();
        return {r.get_den(), -r.get_num()};
    }
    const mpz_class& a = x.rational_num();
    const mpz_class& b = x.radical_num();
    const mpz_class& c = x.denominator();
    mpz_class a0 = c * c;
    mpz_class a1 = -2 * a * c;
    mpz_class a2 = a * a - mpz_class(x.radicand()) * b * b;
    mpz_class content;
    mpz_gcd(content.get_mpz_t(), a0.get_mpz_t(), a1.get_mpz_t());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), a2.get_mpz_t());
    a0 /= content;
    a1 /= content;
    a2 /= content;
    if (a0 < 0) {
        a0 = -a0;
        a1 = -a1;
        a2 = -a2;
    }
    return {a0, a1, a2};
}

HeightValue height_exact(const mpq_class& x, long bits) {
    if (x == 0) return {CertifiedReal(mpq_class(0)), HeightKind::exact};
    mpq_class canonical = x;
    canonical.canonicalize();
    mpz_class num_abs = abs(canonical.get_num());
    mpz_class largest = std::max(num_abs, canonical.get_den());
    return {enclose_log(mpq_class(largest), bits), HeightKind::exact};
}

namespace {

// max(0, log|x|) with the branch decided exactly.
CertifiedReal positive_log_magnitude(const QuadraticNumber& x, long bits) {
    QuadraticNumber magnitude = x.sign() >= 0 ? x : -x;
    int vs_one = magnitude.compare(mpq_class(1));
    if (vs_one <= 0) return CertifiedReal(mpq_class(0));
    return enclose_log(magnitude, bits);
}

}  // namespace

HeightValue height_exact(const QuadraticNumber& x, long bits) {
    if (x.is_rational()) return height_exact(x.is_zero() ? mpq_class(0) : x.to_rational(), bits);
    std::vector<mpz_class> poly = minimal_polynomial(x);
    CertifiedReal lead_log = poly[0] == 1 ? CertifiedReal(mpq_class(0))
                                          : enclose_log(mpq_class(poly[0]), bits);
    CertifiedReal t1 = positive_log_magnitude(x, bits);
    CertifiedReal t2 = positive_log_magnitude(x.conjugate(), bits);
    CertifiedReal half(mpq_class(1, 2));
    return {(lead_log + t1 + t2) * half, HeightKind::exact};
}

HeightExpr HeightExpr::leaf(QuadraticNumber value) {
    HeightExpr e;
    e.op_ = Op::leaf;
    e.value_ = std::move(value);
    return e;
}

HeightExpr HeightExpr::leaf(const mpq_class& value) { return leaf(QuadraticNumber(value)); }

HeightExpr HeightExpr::sum(HeightExpr a, HeightExpr b) {
    HeightExpr e;
    e.op_ = Op::add;
    e.left_ = std::make_shared<HeightExpr>(std::move(a));
    e.right_ = std::make_shared<HeightExpr>(std::move(b));
    return e;
}

HeightExpr HeightExpr::difference(HeightExpr a, HeightExpr b) {
    HeightExpr e = sum(std::move(a), std::move(b));
    e.op_ = Op::sub;
    return e;
}

HeightExpr HeightExpr::product(HeightExpr a, HeightExpr b) {
    HeightExpr e = sum(std::move(a), std::move(b));
    e.op_ = Op::mul;
    return e;
}

HeightExpr HeightExpr::quotient(HeightExpr a, HeightExpr b) {
    HeightExpr e = sum(std::move(a), std::move(b));
    e.op_ = Op::div;
    return e;
}

HeightExpr HeightExpr::power(HeightExpr base, long exponent) {
    HeightExpr e;
    e.op_ = Op::pow;
    e.exponent_ = exponent;
    e.left_ = std::make_shared<HeightExpr>(std::move(base));
    return e;
}

HeightValue HeightExpr::estimate(long bits) const {
    switch (op_) {
        case Op::leaf:
            return {height_exact(value_, bits).value, HeightKind::estimate};
        case Op::add:
        case Op::sub: {
            CertifiedReal ha = left_->estimate(bits).value;
            CertifiedReal hb = right_->estimate(bits).value;
            return {ha + hb + enclose_log(mpq_class(2), bits), HeightKind::estimate};
        }
        case Op::mul:
        case Op::div: {
            CertifiedReal ha = left_->estimate(bits).value;
            CertifiedReal hb = right_->estimate(bits).value;
            return {ha + hb, HeightKind::estimate};
        }
        case Op::pow: {
            CertifiedReal hb = left_->estimate(bits).value;
            mpq_class k(exponent_ < 0 ? -exponent_ : exponent_);
            return {hb * CertifiedReal(k), HeightKind::estimate};
        }
    }
    throw std::logic_error("HeightExpr: unreachable");
}

QuadraticNumber HeightExpr::evaluate() const {
    switch (op_) {
        case Op::leaf:
            return value_;
        case Op::add:
            return left_->evaluate() + right_->evaluate();
        case Op::sub:
            return left_->evaluate() - right_->evaluate();
        case Op::mul:
            return left_->evaluate() * right_->evaluate();
        case Op::div:
            return left_->evaluate() / right_->evaluate();
        case Op::pow:
            return left_->evaluate().pow(exponent_);
    }
    throw std::logic_error("HeightExpr: unreachable");
}

}  // namespace repdiff
