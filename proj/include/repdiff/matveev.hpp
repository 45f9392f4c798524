#pragma once

// Lower bounds for linear forms in logarithms and the bound-chaining steps
// that turn them into explicit inequalities n*log(alpha) < c*(1+log n)^p.
//
// The coefficient computed here is
//     C = 1.4 * 30^(l+3) * l^4.5 * dL^2 * (1 + log 2) * A_1 ... A_l
// so that log|Gamma| > -C * (1 + log D); the (1 + log D) factor stays
// symbolic until a concrete bound is extracted.  Chaining against an upper
// bound rhs/alpha^w and solving the resulting self-referential inequality via
// the L < 2^r H (log H)^r device produces the big concrete exponent bounds.
// Inflation of constants to two significant figures is performed as certified
// outward rounding so the emitted chain matches published reference values
// line by line.

#include <optional>
#include <string>
#include <vector>

#include "repdiff/certified_real.hpp"
#include "repdiff/quadratic.hpp"

namespace repdiff {

// Raised when a theorem's hypothesis cannot be certified for the inputs.
class HypothesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LinearFormProblem {
    int multiplicand_count = 0;  // l
    int field_degree = 0;        // d_L
    std::vector<CertifiedReal> heights;  // A_j, each >= max{dL*h, |log|, 0.16}
    std::vector<std::string> gamma_meta;  // descriptions of the gamma_j / b_j
    std::string exponent_symbol = "n";    // the symbolic D

    void validate() const;
};

// The product above, as a certified enclosure.
CertifiedReal matveev_coefficient(const LinearFormProblem& problem, long bits);

// rhs constant * (1 + log n)^log_power bound on w * root_log.
struct BoundExpression {
    CertifiedReal constant;       // exact two-significant-figure rational
    int log_power = 1;            // 1 or 2
    CertifiedReal plus_term;      // additive slack (zero once folded)
    CertifiedReal root_log;       // enclosure of log of the growth root
    std::string statement;
};

// Combines log|Gamma| > -C(1+log D) with |Gamma| < rhs/alpha^w into
// w*log(alpha) < constant*(1+log n)^log_power, folding log(rhs) into the
// constant by outward two-significant-figure rounding.
BoundExpression chain_gap_bound(const CertifiedReal& coefficient, int rhs_constant,
                                const CertifiedReal& root_log, int log_power, long bits);

// Upper bound 2^r * H * (log H)^r for any L with H > L/(log L)^r; the
// hypothesis H > (4r^2)^r is certified and its violation reported with the
// failed inequality.
CertifiedReal lemma2_enclosure(int r, const CertifiedReal& h_value, long bits);
mpz_class lemma2_solve(int r, const CertifiedReal& h_value, long bits);

// |e^z - 1| < y with y < 1/2 implies |z| < 2y.  Returns the multiplier 2
// after certifying y < 1/2; throws HypothesisError otherwise.
int linearize_exponential(const CertifiedReal& y_bound);
// Same check for y = rhs / alpha^gap decided exactly in the quadratic field;
// the failure message names the smallest gap for which the step is valid.
int linearize_exponential(int rhs_numerator, const QuadraticNumber& alpha, long gap);

struct NonvanishingCertificate {
    std::string statement;
    bool verdict = false;
};

// Gamma = 1 - base^(-n) 10^k coeff cannot vanish: coeff must be rational or
// a rational multiple of the radical, so vanishing would force an integer
// power of base to be rational.  Requires base in Z[sqrt(D)] with positive
// parts; unsupported coefficient shapes are rejected.
NonvanishingCertificate certify_nonvanishing(const QuadraticNumber& coefficient,
                                             const QuadraticNumber& power_base);

// Non-vanishing for the second-stage forms: vanishing would force
// base^n - base^m = coeff * 10^k, impossible because the radical (or
// rational) parts of base powers are strictly increasing.
NonvanishingCertificate certify_nonvanishing_difference(const QuadraticNumber& coefficient,
                                                        const QuadraticNumber& power_base);

// Coefficient of (1+log n) in the second-stage height bound: folds the
// gap-independent height bound into half the first-stage constant and
// doubles, with outward two-significant-figure rounding at the same points
// the reference chain rounds.
CertifiedReal stage2_height_coefficient(const BoundExpression& stage1,
                                        const CertifiedReal& static_height_bound);

}  // namespace repdiff
