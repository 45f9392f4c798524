#include "repdiff/matveev.hpp"

#include <stdexcept>

namespace repdiff {

namespace {

// Certified enclosure of sqrt(n) for a positive integer n: split off the
// square part and enclose the square-free remainder.
CertifiedReal enclose_sqrt_integer(long n, long bits) {
    if (n <= 0) throw std::invalid_argument("enclose_sqrt_integer: positive argument required");
    long square_part = 1;
    long rest = n;
    for (long p = 2; p * p <= rest;) {
        if (rest % (p * p) == 0) {
            square_part *= p;
            rest /= p * p;
        } else {
            ++p;
        }
    }
    CertifiedReal root = rest == 1 ? CertifiedReal(mpq_class(1))
                                   : enclose(QuadraticNumber::sqrt_of(rest), bits);
    return CertifiedReal(mpq_class(square_part)) * root;
}

CertifiedReal int_power(const CertifiedReal& x, int e) {
    CertifiedReal out((mpq_class(1)));
    for (int i = 0; i < e; ++i) out = out * x;
    return out;
}

}  // namespace

void LinearFormProblem::validate() const {
    if (multiplicand_count < 1) throw std::invalid_argument("LinearFormProblem: l must be >= 1");
    if (field_degree < 1) throw std::invalid_argument("LinearFormProblem: field degree must be >= 1");
    if (static_cast<int>(heights.size()) != multiplicand_count)
        throw std::invalid_argument("LinearFormProblem: need exactly l height values");
    const mpq_class floor_value(16, 100);
    for (const CertifiedReal& a : heights)
        if (!(a.lo() >= floor_value))
            throw std::invalid_argument("LinearFormProblem: every A_j must be certified >= 0.16");
}

CertifiedReal matveev_coefficient(const LinearFormProblem& problem, long bits) {
    problem.validate();
    const int l = problem.multiplicand_count;

    mpz_class thirty_pow;
    mpz_ui_pow_ui(thirty_pow.get_mpz_t(), 30, static_cast<unsigned long>(l + 3));

    // l^4.5 = l^4 * sqrt(l)
    mpz_class l4 = mpz_class(l) * l * l * l;
    CertifiedReal l_to_45 = CertifiedReal(mpq_class(l4)) * enclose_sqrt_integer(l, bits);

    mpq_class leading = mpq_class(7, 5) * thirty_pow * problem.field_degree * problem.field_degree;
    CertifiedReal one_plus_log2 = CertifiedReal(mpq_class(1)) + enclose_log(mpq_class(2), bits);

    CertifiedReal result = CertifiedReal(leading) * l_to_45 * one_plus_log2;
    for (const CertifiedReal& a : problem.heights) result = result * a;
    return result;
}

BoundExpression chain_gap_bound(const CertifiedReal& coefficient, int rhs_constant,
                                const CertifiedReal& root_log, int log_power, long bits) {
    if (rhs_constant < 1) throw std::invalid_argument("chain_gap_bound: rhs constant must be >= 1");
    if (log_power != 1 && log_power != 2)
        throw std::invalid_argument("chain_gap_bound: log power must be 1 or 2");
    if (coefficient.lo() < 0)
        throw std::invalid_argument("chain_gap_bound: coefficient must be nonnegative");

    mpq_class rounded = coefficient.hi() == 0 ? mpq_class(0)
                                              : round_up_two_significant(coefficient.hi());
    CertifiedReal log_rhs = rhs_constant == 1 ? CertifiedReal(mpq_class(0))
                                              : enclose_log(mpq_class(rhs_constant), bits);
    // log(rhs) <= log(rhs) * (1+log n)^p for n >= 1, so it folds into the
    // constant before the final outward rounding.
    mpq_class folded_sum = rounded + log_rhs.hi();
    mpq_class folded = folded_sum == 0 ? mpq_class(0) : round_up_two_significant(folded_sum);

    BoundExpression expr;
    expr.constant = CertifiedReal(folded);
    expr.log_power = log_power;
    expr.plus_term = CertifiedReal(mpq_class(0));
    expr.root_log = root_log;
    expr.statement = "w*log(root) < " + decimal_upper(folded, 6) + "*(1+log n)" +
                     (log_power == 2 ? "^2" : "");
    return expr;
}

CertifiedReal lemma2_enclosure(int r, const CertifiedReal& h_value, long bits) {
    if (r < 1) throw std::invalid_argument("lemma2: r must be >= 1");
    mpz_class hypothesis_floor;  // (4r^2)^r
    mpz_ui_pow_ui(hypothesis_floor.get_mpz_t(), static_cast<unsigned long>(4 * r * r),
                  static_cast<unsigned long>(r));
    if (!(h_value.lo() > hypothesis_floor))
        throw HypothesisError("lemma2: hypothesis H > (4r^2)^r not certified: H in " +
                              h_value.to_string() + " vs (4r^2)^r = " + hypothesis_floor.get_str());
    CertifiedReal log_h = enclose_log(h_value, bits);
    mpz_class two_pow_r;
    mpz_ui_pow_ui(two_pow_r.get_mpz_t(), 2, static_cast<unsigned long>(r));
    return CertifiedReal(mpq_class(two_pow_r)) * h_value * int_power(log_h, r);
}

mpz_class lemma2_solve(int r, const CertifiedReal& h_value, long bits) {
    return ceil_rational(lemma2_enclosure(r, h_value, bits).hi());
}

int linearize_exponential(const CertifiedReal& y_bound) {
    if (y_bound.certainly_less(mpq_class(1, 2))) return 2;
    throw HypothesisError("linearize_exponential: cannot certify y < 1/2 for y in " +
                          y_bound.to_string());
}

int linearize_exponential(int rhs_numerator, const QuadraticNumber& alpha, long gap) {
    if (rhs_numerator < 1) throw std::invalid_argument("linearize_exponential: rhs must be >= 1");
    QuadraticNumber y = QuadraticNumber(mpq_class(rhs_numerator)) / alpha.pow(gap);
    if (y.compare(mpq_class(1, 2)) < 0) return 2;
    long smallest = gap + 1;
    while (smallest < gap + 64) {
        QuadraticNumber candidate = QuadraticNumber(mpq_class(rhs_numerator)) / alpha.pow(smallest);
        if (candidate.compare(mpq_class(1, 2)) < 0) break;
        ++smallest;
    }
    throw HypothesisError("linearize_exponential: " + std::to_string(rhs_numerator) + "/root^" +
                          std::to_string(gap) + " >= 1/2; the step holds for gap >= " +
                          std::to_string(smallest));
}

namespace {

void require_unit_like_base(const QuadraticNumber& base) {
    if (base.is_rational() || base.denominator() != 1 || base.rational_num() < 1 ||
        base.radical_num() < 1)
        throw std::invalid_argument(
            "nonvanishing: base must be a + b*sqrt(D) with integer a, b >= 1, got " +
            base.to_string());
}

}  // namespace

NonvanishingCertificate certify_nonvanishing(const QuadraticNumber& coefficient,
                                             const QuadraticNumber& power_base) {
    if (coefficient.is_zero())
        throw std::invalid_argument("nonvanishing: zero coefficient is degenerate");
    bool pure_rational = coefficient.radical_num() == 0;
    bool pure_radical = coefficient.rational_num() == 0;
    if (!pure_rational && !pure_radical)
        throw std::invalid_argument("nonvanishing: unsupported coefficient shape " +
                                    coefficient.to_string());
    require_unit_like_base(power_base);

    // Vanishing would give base^n = 10^k * coeff, so base^(2n) = 10^(2k) * coeff^2
    // with coeff^2 rational; but every positive power of the base has a
    // nonzero radical part (b_j >= 1 by induction), hence is irrational.
    NonvanishingCertificate cert;
    cert.verdict = true;
    cert.statement = "Gamma = 1 - base^(-n) 10^k (" + coefficient.to_string() +
                     ") cannot vanish: vanishing forces base^(2n) rational, but powers of " +
                     power_base.to_string() + " have nonzero radical part";
    return cert;
}

NonvanishingCertificate certify_nonvanishing_difference(const QuadraticNumber& coefficient,
                                                        const QuadraticNumber& power_base) {
    if (coefficient.is_zero())
        throw std::invalid_argument("nonvanishing: zero coefficient is degenerate");
    bool pure_rational = coefficient.radical_num() == 0;
    bool pure_radical = coefficient.rational_num() == 0;
    if (!pure_rational && !pure_radical)
        throw std::invalid_argument("nonvanishing: unsupported coefficient shape " +
                                    coefficient.to_string());
    require_unit_like_base(power_base);

    // Vanishing would give base^n - base^m = coeff * 10^k.  Writing
    // base^j = a_j + b_j sqrt(D), both a_j and b_j are strictly increasing in
    // j (a, b >= 1), so the difference has nonzero radical part (rational
    // coeff) and nonzero rational part (radical coeff) whenever n > m.
    NonvanishingCertificate cert;
    cert.verdict = true;
    cert.statement = "base^n - base^m = (" + coefficient.to_string() +
                     ") 10^k is impossible for n > m: the " +
                     (pure_rational ? "radical" : "rational") + " parts of powers of " +
                     power_base.to_string() + " are strictly increasing";
    return cert;
}

CertifiedReal stage2_height_coefficient(const BoundExpression& stage1,
                                        const CertifiedReal& static_height_bound) {
    // h(lambda3') < static + w*log(root)/2 and w*log(root) < c1*(1+log n):
    // fold the static part (rounded up to one decimal, as the reference
    // chain displays it) into half the stage-1 constant, round outward to
    // two significant figures, and double to get the A_3 coefficient.
    mpq_class static_rounded = round_up_decimal(static_height_bound.hi(), 1);
    mpq_class folded = round_up_two_significant(stage1.constant.hi() / 2 + static_rounded);
    return CertifiedReal(mpq_class(2 * folded));
}

}  // namespace repdiff
