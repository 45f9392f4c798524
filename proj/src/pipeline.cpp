#include "repdiff/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

namespace repdiff {

namespace {

CertifiedReal interval_max(const CertifiedReal& a, const CertifiedReal& b) {
    return {std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

CertifiedReal interval_max(const CertifiedReal& a, const CertifiedReal& b, const CertifiedReal& c) {
    return interval_max(interval_max(a, b), c);
}

// A_j >= max{dL*h(gamma), |log gamma|, 0.16} certified for one concrete
// lambda; the Matveev hypotheses are checked, not assumed.
void check_height_input(const CertifiedReal& a_value, const QuadraticNumber& gamma, int degree,
                        long bits, const std::string& what) {
    CertifiedReal h = height_exact(gamma, bits).value;
    CertifiedReal lg = enclose_log(gamma, bits).abs();
    CertifiedReal needed = interval_max(h * CertifiedReal(mpq_class(degree)), lg,
                                        CertifiedReal(mpq_class(16, 100)));
    if (!(a_value.lo() >= needed.hi()))
        throw std::invalid_argument("height input " + what + " = " + a_value.to_string() +
                                    " is not certified >= " + needed.to_string());
}

}  // namespace

ProofCertificate run_proof(const ProblemConfig& config, PrecisionPolicy policy) {
    policy.validate();
    ProofCertificate cert(config);
    std::string stage = "config";
    try {
        config.validate();
        const long bits = policy.initial_bits;
        const QuadraticNumber alpha = config.sequence.alpha();

        cert.log_alpha = enclose_log(alpha, bits);
        cert.log_10 = enclose_log(mpq_class(10), bits);
        cert.tau = cert.log_10 / cert.log_alpha;

        // The exponent domination remark backing D = n in the linear forms:
        // the repdigit has fewer digits than alpha^n, so k < n once n >= 3.
        stage = "exponent domination";
        if (!(cert.log_alpha.hi() < cert.log_10.lo()))
            throw std::invalid_argument("expected log(root) < log 10 for the k < n bound");
        cert.exponent_domination =
            "log(" + alpha.to_string() + ") < log 10 certified, so k < n for every solution with n >= 3; "
            "D = n dominates all linear-form exponents";

        stage = "small search";
        cert.small_search =
            exhaustive_search(config.sequence, config.small_search_limit, config.k_min);

        stage = "non-vanishing";
        for (int d = config.digit_min; d <= config.digit_max; ++d) {
            NonvanishingCertificate c1 = certify_nonvanishing(config.lambda3(d), alpha);
            NonvanishingCertificate c2 = certify_nonvanishing_difference(config.lambda3(d), alpha);
            if (!c1.verdict || !c2.verdict)
                throw std::runtime_error("non-vanishing certificate failed for d=" + std::to_string(d));
            if (d == config.digit_max) {
                cert.nonvanishing_stage1 = c1;
                cert.nonvanishing_stage2 = c2;
            }
        }

        stage = "stage-1 linear form";
        CertifiedReal height_alpha = height_exact(alpha, bits).value;
        CertifiedReal a1 = interval_max(height_alpha * CertifiedReal(mpq_class(2)),
                                        cert.log_alpha.abs(), CertifiedReal(mpq_class(16, 100)));
        CertifiedReal a2 = interval_max(height_exact(mpq_class(10), bits).value * CertifiedReal(mpq_class(2)),
                                        cert.log_10.abs(), CertifiedReal(mpq_class(16, 100)));

        // Estimated height of lambda_3 over the digit range, following the
        // unreduced numerator/denominator split.
        CertifiedReal lambda_estimate(mpq_class(0));
        for (int d = config.digit_min; d <= config.digit_max; ++d) {
            HeightExpr tree = HeightExpr::quotient(
                HeightExpr::leaf(config.lambda3_num_unit * QuadraticNumber(mpz_class(d))),
                HeightExpr::leaf(mpq_class(config.lambda3_den)));
            lambda_estimate = interval_max(lambda_estimate, tree.estimate(bits).value);
        }
        // a1 and a2 are themselves enclosures of the required maxima, so
        // only the externally estimated A3 needs the hypothesis check.
        CertifiedReal a3_stage1(round_up_decimal(lambda_estimate.hi(), 1) * 2);
        for (int d = config.digit_min; d <= config.digit_max; ++d)
            check_height_input(a3_stage1, config.lambda3(d), 2, bits, "A3 (d=" + std::to_string(d) + ")");

        LinearFormProblem problem1;
        problem1.multiplicand_count = 3;
        problem1.field_degree = 2;
        problem1.heights = {a1, a2, a3_stage1};
        problem1.gamma_meta = {"gamma_1 = " + alpha.to_string() + ", b_1 = -n",
                              "gamma_2 = 10, b_2 = k",
                              "gamma_3 = " + config.lambda3_text + ", b_3 = 1"};
        cert.stage1_matveev.a1 = a1;
        cert.stage1_matveev.a2 = a2;
        cert.stage1_matveev.a3 = a3_stage1;
        cert.stage1_matveev.coefficient = matveev_coefficient(problem1, bits);
        cert.stage1_matveev.bound =
            chain_gap_bound(cert.stage1_matveev.coefficient, config.rhs_stage1, cert.log_alpha, 1, bits);
        cert.stage1_matveev.description = "(n-m) bound from |Gamma_1| < " +
                                          std::to_string(config.rhs_stage1) + "/root^(n-m)";

        stage = "stage-2 linear form";
        // h(lambda_3 / (1 - root^-g)) <= [estimate + log 2] + g*h(root).
        CertifiedReal static_height = lambda_estimate + enclose_log(mpq_class(2), bits);
        CertifiedReal a3_stage2 = stage2_height_coefficient(cert.stage1_matveev.bound, static_height);

        LinearFormProblem problem2 = problem1;
        problem2.heights = {a1, a2, a3_stage2};
        problem2.gamma_meta[2] = "gamma_3 = " + config.lambda3_text + "/(1-root^(m-n)), b_3 = 1";
        cert.stage2_matveev.a1 = a1;
        cert.stage2_matveev.a2 = a2;
        cert.stage2_matveev.a3 = a3_stage2;
        cert.stage2_matveev.coefficient = matveev_coefficient(problem2, bits);
        cert.stage2_matveev.bound =
            chain_gap_bound(cert.stage2_matveev.coefficient, config.rhs_stage2, cert.log_alpha, 2, bits);
        cert.stage2_matveev.description =
            "n bound from |Gamma_2| < " + std::to_string(config.rhs_stage2) +
            "/root^n, with A3 = " + decimal_upper(a3_stage2.hi(), 3) + "*(1+log n)";

        stage = "bound extraction";
        CertifiedReal h_value = cert.stage2_matveev.bound.constant / cert.log_alpha;
        cert.lemma2_value = lemma2_enclosure(2, h_value, bits);
        mpq_class m_rounded = round_up_two_significant(cert.lemma2_value.hi());
        if (m_rounded.get_den() != 1)
            throw std::logic_error("bound extraction produced a non-integer M");
        cert.lemma2_bound = m_rounded.get_num();

        stage = "bound verification";
        // Certify, independently of the extraction lemma, that n >= M is
        // incompatible with n*log(root) < c2*(1+log n)^p: the inequality
        // fails at n = M, and since (1+log n)/n decreases, the margin
        //   n*log(root) - c2*(1+log n)^p
        // keeps growing beyond M once its derivative is positive there.
        {
            const int power = cert.stage2_matveev.bound.log_power;
            const CertifiedReal& c2 = cert.stage2_matveev.bound.constant;
            CertifiedReal m_value((mpq_class(cert.lemma2_bound)));
            CertifiedReal one_plus_log_m =
                CertifiedReal(mpq_class(1)) + enclose_log(mpq_class(cert.lemma2_bound), bits);
            CertifiedReal rhs_at_m = c2;
            for (int i = 0; i < power; ++i) rhs_at_m = rhs_at_m * one_plus_log_m;
            CertifiedReal lhs_at_m = m_value * cert.log_alpha;
            if (!(lhs_at_m.lo() > rhs_at_m.hi()))
                throw std::runtime_error("extracted bound M does not yet defeat the stage-2 inequality");
            CertifiedReal derivative_term = CertifiedReal(mpq_class(power)) * c2 / m_value;
            for (int i = 0; i + 1 < power; ++i) derivative_term = derivative_term * one_plus_log_m;
            if (!(derivative_term.hi() < cert.log_alpha.lo()))
                throw std::runtime_error("stage-2 margin not certified increasing beyond M");
            cert.bound_verification =
                "n >= " + cert.lemma2_bound.get_str() + " violates n*log(root) < " +
                decimal_upper(c2.hi(), 3) + "*(1+log n)" + (power == 2 ? "^2" : "") +
                ": the gap is positive at M and increasing beyond it";
        }

        stage = "linearization";
        cert.linear_multiplier = linearize_exponential(config.rhs_stage1, alpha, 2);
        if (linearize_exponential(config.rhs_stage2, alpha, 2) != cert.linear_multiplier)
            throw std::logic_error("stage multipliers disagree");

        LambdaFamilySpec family;
        family.lambda3_unit = config.lambda3_num_unit / QuadraticNumber(config.lambda3_den);
        family.root = alpha;
        family.rhs_stage1 = config.rhs_stage1;
        family.rhs_stage2 = config.rhs_stage2;
        family.digit_min = config.digit_min;
        family.digit_max = config.digit_max;

        stage = "reduction stage 1";
        cert.reduction1 =
            reduce(build_lambda_inequality(ReductionStage::gap, family, cert.lemma2_bound, 0, policy));

        stage = "reduction stage 2";
        cert.reduction2 = reduce(build_lambda_inequality(ReductionStage::absolute, family,
                                                         cert.lemma2_bound, cert.reduction1.w_bound,
                                                         policy));

        stage = "closure";
        cert.closure.bound_checked = std::max(cert.reduction2.w_bound, config.small_search_limit);
        cert.closure.k_min = config.k_min;
        cert.closure.solutions = exhaustive_search(config.sequence, cert.closure.bound_checked, config.k_min);

        bool closed = cert.small_search.empty() && cert.closure.solutions.empty() &&
                      (cert.reduction2.w_bound <= config.small_search_limit ||
                       cert.closure.bound_checked >= cert.reduction2.w_bound);
        if (closed) {
            cert.verdict = "proven";
        } else {
            cert.verdict = "not-proven";
            cert.failure_reason = "closure: witnesses survive the exhaustive range (" +
                                  std::to_string(cert.small_search.size()) + " small, " +
                                  std::to_string(cert.closure.solutions.size()) + " in closure)";
        }
    } catch (const std::exception& e) {
        cert.verdict = "not-proven";
        cert.failure_reason = stage + ": " + e.what();
    }
    return cert;
}

}  // namespace repdiff
