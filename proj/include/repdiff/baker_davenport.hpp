#pragma once

// Certified continued-fraction expansion and the reduction lemma machinery
// that shrinks the huge linear-form exponent bounds down to searchable size.
//
// For an irrational tau given as a refinable enclosure, cf_expand produces
// partial quotients whose floors are each certified; on an undecidable floor
// the entire expansion restarts from a sharper enclosure of tau.  reduce()
// applies the classical reduction: pick a convergent denominator q > 6M,
// certify epsilon = ||mu q|| - M ||tau q|| > 0 for every member of the mu
// family, and cap the exponent w by floor(log(A q / epsilon) / log B).  When
// some epsilon cannot be certified positive the next convergent is tried, up
// to a bounded retry budget.
//
// One genuinely degenerate situation is handled specially: a family member
// whose mu is *exactly* rational r/s (equivalently, whose lambda is exactly
// base^(r/s)).  For such members ||mu q|| vanishes on every q divisible by s
// and the epsilon test can never succeed.  The member is instead bounded
// through the best-approximation property of convergents:
//     |u tau - v + r/s| >= ||s u tau|| / s > 1 / (2 s q)   for s*u < q,
// giving w < log(2 s A q) / log B.  Detection is exact field arithmetic, not
// numerics.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "repdiff/certified_real.hpp"
#include "repdiff/quadratic.hpp"

namespace repdiff {

class ReductionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Convergent {
    mpz_class partial_quotient;  // a_i
    mpz_class p, q;              // p_i / q_i in lowest terms
};

class ContinuedFraction {
public:
    ContinuedFraction(RealRecipe value, std::string source, PrecisionPolicy policy = {});

    // Expands lazily; throws std::out_of_range past the end of a terminating
    // (rational) expansion and PrecisionExhausted when a floor cannot be
    // certified within the precision cap.
    const Convergent& at(std::size_t index);
    void ensure(std::size_t count);

    std::size_t known_count() const { return convergents_.size(); }
    bool terminated() const { return terminated_; }
    long bits_used() const { return bits_used_; }
    const std::string& source() const { return source_; }

private:
    void expand_to(std::size_t count);
    // One full expansion attempt at fixed precision; returns false when a
    // floor could not be certified at this precision.
    bool attempt(std::size_t count, long bits);

    RealRecipe value_;
    std::string source_;
    PrecisionPolicy policy_;
    std::vector<Convergent> convergents_;
    bool terminated_ = false;
    long bits_used_ = 0;
};

// Convenience wrapper: expansion with count+1 quotients (fewer if the value
// is rational and the expansion terminates).
ContinuedFraction cf_expand(RealRecipe value, std::size_t count, std::string source,
                            PrecisionPolicy policy = {});

// Smallest index i with q_i > threshold, expanding lazily.
std::pair<std::size_t, mpz_class> find_denominator_exceeding(ContinuedFraction& cf,
                                                             const mpz_class& threshold);

struct ReductionLabel {
    std::string name;
    RealRecipe mu;
    // Present when mu is exactly rational (lambda = base^(num/den)); such
    // labels bypass the epsilon test, see above.
    std::optional<mpq_class> exact_mu;
};

struct ReductionProblem {
    RealRecipe tau;
    std::string tau_source;
    std::vector<ReductionLabel> mu_family;
    mpq_class bound_coefficient;  // A > 0
    RealRecipe log_base;          // log B, with B > 1 certified by the caller
    std::string base_description;
    mpz_class exponent_bound;  // M >= 1, bound on u
    int retry_budget = 10;
    PrecisionPolicy policy;

    void validate() const;
};

struct ReductionOutcome {
    mpz_class q_used;
    std::size_t q_index = 0;
    mpq_class bound_coefficient;  // A actually used
    CertifiedReal epsilon_min;
    std::string epsilon_min_label;
    long w_bound = 0;
    // Epsilon per family member at the accepted convergent, family order.
    std::vector<std::pair<std::string, CertifiedReal>> per_label_epsilon;
    // Exact-rational members handled by the best-approximation bound.
    std::vector<std::pair<std::string, long>> exact_label_bounds;
    long w_bound_epsilon_labels = 0;
    long w_bound_exact_labels = 0;
    long bits_used = 0;
};

ReductionOutcome reduce(const ReductionProblem& problem);

enum class ReductionStage { gap, absolute };

// Constants defining the mu family of one proof instance.
struct LambdaFamilySpec {
    QuadraticNumber lambda3_unit;  // lambda_3 = unit * d
    QuadraticNumber root;          // alpha, the growth root (also B)
    int rhs_stage1 = 0;            // |Gamma| < rhs/alpha^(n-m)
    int rhs_stage2 = 0;            // |Gamma| < rhs/alpha^n
    int digit_min = 1;
    int digit_max = 9;
};

// Assembles the reduction problem for one stage: tau = log 10 / log alpha,
// mu = log(lambda)/log(alpha) over the digit family (and over gaps 1..gap_max
// for the absolute stage), A = ceil(2*rhs / log alpha) certified, B = alpha.
ReductionProblem build_lambda_inequality(ReductionStage stage, const LambdaFamilySpec& family,
                                         const mpz_class& exponent_bound, long gap_max,
                                         PrecisionPolicy policy = {});

// Exact test for lambda = base^(num/den) with den in {1, 2}; the heart of
// the degenerate-label detection.  Denominators beyond 2 cannot occur for
// quadratic lambda: lambda^s = base^r forces N(lambda)^s = N(base)^r = 1,
// so lambda is (up to sign) a power of the fundamental unit and its log
// ratio against base = unit^2 is a half-integer.
std::optional<mpq_class> exact_log_ratio(const QuadraticNumber& lambda,
                                         const QuadraticNumber& base);

}  // namespace repdiff
