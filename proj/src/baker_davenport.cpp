#include "repdiff/baker_davenport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace repdiff {

ContinuedFraction::ContinuedFraction(RealRecipe value, std::string source, PrecisionPolicy policy)
    : value_(std::move(value)), source_(std::move(source)), policy_(policy) {
    policy_.validate();
}

const Convergent& ContinuedFraction::at(std::size_t index) {
    ensure(index + 1);
    if (index >= convergents_.size())
        throw std::out_of_range("ContinuedFraction(" + source_ + "): expansion terminated after " +
                                std::to_string(convergents_.size()) + " quotients");
    return convergents_[index];
}

void ContinuedFraction::ensure(std::size_t count) {
    if (convergents_.size() >= count || terminated_) return;
    expand_to(count);
}

void ContinuedFraction::expand_to(std::size_t count) {
    long bits = std::max(bits_used_, policy_.initial_bits);
    while (true) {
        if (attempt(count, bits)) return;
        bits *= policy_.escalation_factor;
        if (bits > policy_.max_bits)
            throw PrecisionExhausted("ContinuedFraction(" + source_ +
                                     "): floor not certifiable within precision cap");
    }
}

bool ContinuedFraction::attempt(std::size_t count, long bits) {
    // Recompute from scratch: every partial quotient depends on the full
    // history, so the whole prefix is re-certified at the new precision.
    CertifiedReal x = value_(bits);
    std::vector<Convergent> fresh;
    fresh.reserve(count);
    mpz_class p_prev1 = 1, p_prev2 = 0;  // p_{-1}, p_{-2}
    mpz_class q_prev1 = 0, q_prev2 = 1;  // q_{-1}, q_{-2}
    bool terminated = false;

    while (fresh.size() < count) {
        mpz_class a_lo = floor_rational(x.lo());
        mpz_class a_hi = floor_rational(x.hi());
        if (a_lo != a_hi) return false;  // escalate

        Convergent c;
        c.partial_quotient = a_lo;
        c.p = a_lo * p_prev1 + p_prev2;
        c.q = a_lo * q_prev1 + q_prev2;
        p_prev2 = p_prev1;
        p_prev1 = c.p;
        q_prev2 = q_prev1;
        q_prev1 = c.q;
        fresh.push_back(std::move(c));

        CertifiedReal fractional = x - CertifiedReal(mpq_class(a_lo));
        if (fractional.lo() == 0 && fractional.hi() == 0) {
            terminated = true;  // exactly rational input, expansion complete
            break;
        }
        if (fractional.lo() <= 0) return false;  // cannot certify the next reciprocal
        x = CertifiedReal(mpq_class(1)) / fractional;
    }

    convergents_ = std::move(fresh);
    terminated_ = terminated;
    bits_used_ = bits;
    return true;
}

ContinuedFraction cf_expand(RealRecipe value, std::size_t count, std::string source,
                            PrecisionPolicy policy) {
    ContinuedFraction cf(std::move(value), std::move(source), policy);
    cf.ensure(count + 1);
    return cf;
}

std::pair<std::size_t, mpz_class> find_denominator_exceeding(ContinuedFraction& cf,
                                                             const mpz_class& threshold) {
    for (std::size_t i = 0;; ++i) {
        const Convergent& c = cf.at(i);
        if (c.q > threshold) return {i, c.q};
    }
}

void ReductionProblem::validate() const {
    if (!(bound_coefficient > 0)) throw std::invalid_argument("reduce: A must be positive");
    if (exponent_bound < 1) throw std::invalid_argument("reduce: M must be >= 1");
    if (mu_family.empty()) throw std::invalid_argument("reduce: empty mu family");
    if (retry_budget < 0) throw std::invalid_argument("reduce: negative retry budget");
    policy.validate();
}

namespace {

// floor(log(A*q/eps) / log B) with certified refinement. `eps` recomputes the
// epsilon enclosure at a given precision.
long certified_threshold_floor(const mpq_class& a_times_q, const RealRecipe& eps,
                               const RealRecipe& log_base, const PrecisionPolicy& policy) {
    RealRecipe threshold = [&](long bits) {
        CertifiedReal e = eps(bits);
        if (e.lo() <= 0)
            throw ReductionFailure("reduce: epsilon lost positivity during refinement");
        CertifiedReal ratio = CertifiedReal(a_times_q) / e;
        return enclose_log(ratio, bits) / log_base(bits);
    };
    mpz_class f = certified_floor(threshold, policy);
    if (!f.fits_slong_p()) throw ReductionFailure("reduce: exponent bound out of range");
    return f.get_si();
}

}  // namespace

ReductionOutcome reduce(const ReductionProblem& problem) {
    problem.validate();
    const mpz_class& m_bound = problem.exponent_bound;

    ContinuedFraction cf(problem.tau, problem.tau_source, problem.policy);
    auto [first_index, first_q] = find_denominator_exceeding(cf, 6 * m_bound);

    std::string failure_log;
    for (int attempt = 0; attempt <= problem.retry_budget; ++attempt) {
        const Convergent& convergent = cf.at(first_index + attempt);
        const mpz_class& q = convergent.q;

        // Exact-rational labels: independent of epsilon, but require q > s*M.
        std::vector<std::pair<std::string, long>> exact_bounds;
        bool exact_ok = true;
        for (const ReductionLabel& label : problem.mu_family) {
            if (!label.exact_mu) continue;
            mpz_class s = label.exact_mu->get_den();
            if (!(q > s * m_bound)) {
                exact_ok = false;
                break;
            }
            mpq_class two_s_a_q = 2 * mpq_class(s) * problem.bound_coefficient * mpq_class(q);
            RealRecipe log_base = problem.log_base;
            RealRecipe threshold = [two_s_a_q, log_base](long bits) {
                return enclose_log(two_s_a_q, bits) / log_base(bits);
            };
            mpz_class f = certified_floor(threshold, problem.policy);
            if (!f.fits_slong_p()) throw ReductionFailure("reduce: exact-label bound out of range");
            exact_bounds.emplace_back(label.name, f.get_si());
        }
        if (!exact_ok) {
            failure_log += "q_" + std::to_string(first_index + attempt) + ": below s*M for an exact label\n";
            continue;
        }

        // M * ||tau q|| as a refinable quantity shared by all labels.  All
        // recipe closures capture by value so they can outlive this scope.
        const RealRecipe tau_recipe = problem.tau;
        const mpz_class m_copy = m_bound;
        const mpz_class q_copy = q;
        RealRecipe m_tau_q = [tau_recipe, m_copy, q_copy](long bits) {
            CertifiedReal tq = tau_recipe(bits) * CertifiedReal(mpq_class(q_copy));
            return CertifiedReal(mpq_class(m_copy)) * nearest_integer_distance(tq);
        };
        auto epsilon_of = [m_tau_q, q_copy](const ReductionLabel& label) {
            RealRecipe mu = label.mu;
            return RealRecipe([m_tau_q, q_copy, mu](long bits) {
                CertifiedReal mq = mu(bits) * CertifiedReal(mpq_class(q_copy));
                return nearest_integer_distance(mq) - m_tau_q(bits);
            });
        };

        // Find one working precision at which every epsilon enclosure
        // excludes zero; definite negativity sends us to the next convergent.
        long bits = problem.policy.initial_bits;
        bool certified = true;
        bool move_on = false;
        std::vector<std::pair<std::string, CertifiedReal>> table;
        while (true) {
            certified = true;
            move_on = false;
            table.clear();
            std::string negative_label;
            for (const ReductionLabel& label : problem.mu_family) {
                if (label.exact_mu) continue;
                CertifiedReal eps = epsilon_of(label)(bits);
                if (eps.certainly_negative() || eps.hi() == 0) {
                    move_on = true;
                    negative_label = label.name;
                    break;
                }
                if (!eps.certainly_positive()) certified = false;
                table.emplace_back(label.name, eps);
            }
            if (move_on) {
                failure_log += "q_" + std::to_string(first_index + attempt) +
                               ": epsilon <= 0 certified for label " + negative_label + "\n";
                break;
            }
            if (certified) break;
            bits *= problem.policy.escalation_factor;
            if (bits > problem.policy.max_bits)
                throw PrecisionExhausted("reduce: epsilon positivity undecidable at precision cap (" +
                                         problem.tau_source + ")");
        }
        if (move_on) continue;

        // All epsilons certified positive at this convergent: build the outcome.
        ReductionOutcome outcome;
        outcome.q_used = q;
        outcome.q_index = first_index + attempt;
        outcome.bound_coefficient = problem.bound_coefficient;
        outcome.per_label_epsilon = table;
        outcome.exact_label_bounds = exact_bounds;
        outcome.bits_used = bits;

        std::size_t min_at = 0;
        for (std::size_t i = 1; i < table.size(); ++i)
            if (table[i].second.lo() < table[min_at].second.lo()) min_at = i;
        outcome.epsilon_min = table[min_at].second;
        outcome.epsilon_min_label = table[min_at].first;

        // The threshold floors start at the precision that certified
        // positivity; the epsilon enclosures nest, so they stay positive.
        PrecisionPolicy floor_policy = problem.policy;
        floor_policy.initial_bits = bits;
        mpq_class a_times_q = problem.bound_coefficient * mpq_class(q);
        long w_eps = 0;
        for (const ReductionLabel& label : problem.mu_family) {
            if (label.exact_mu) continue;
            long w = certified_threshold_floor(a_times_q, epsilon_of(label), problem.log_base,
                                               floor_policy);
            w_eps = std::max(w_eps, w);
        }
        long w_exact = 0;
        for (const auto& [name, w] : exact_bounds) w_exact = std::max(w_exact, w);

        outcome.w_bound_epsilon_labels = w_eps;
        outcome.w_bound_exact_labels = w_exact;
        outcome.w_bound = std::max(w_eps, w_exact);
        return outcome;
    }

    throw ReductionFailure("reduce(" + problem.tau_source + "): no admissible convergent within " +
                           std::to_string(problem.retry_budget) + " retries past q > 6M\n" + failure_log);
}

std::optional<mpq_class> exact_log_ratio(const QuadraticNumber& lambda,
                                         const QuadraticNumber& base) {
    if (lambda.sign() <= 0 || base.sign() <= 0) return std::nullopt;
    // Candidate exponent from a crude double estimate of log(lambda)/log(base).
    CertifiedReal num = enclose_log(lambda, 96);
    CertifiedReal den = enclose_log(base, 96);
    double estimate = mpq_class(num.midpoint()).get_d() / mpq_class(den.midpoint()).get_d();
    for (long s = 1; s <= 2; ++s) {
        long r = std::lround(estimate * static_cast<double>(s));
        for (long candidate : {r - 1, r, r + 1}) {
            if (lambda.pow(s) == base.pow(candidate)) {
                mpq_class ratio(candidate, s);
                ratio.canonicalize();
                return ratio;
            }
        }
    }
    return std::nullopt;
}

ReductionProblem build_lambda_inequality(ReductionStage stage, const LambdaFamilySpec& family,
                                         const mpz_class& exponent_bound, long gap_max,
                                         PrecisionPolicy policy) {
    if (family.digit_min < 1 || family.digit_max > 9 || family.digit_min > family.digit_max)
        throw std::invalid_argument("build_lambda_inequality: digit range must lie in 1..9");
    int rhs = stage == ReductionStage::gap ? family.rhs_stage1 : family.rhs_stage2;
    if (rhs < 1) throw std::invalid_argument("build_lambda_inequality: rhs constant must be >= 1");
    if (stage == ReductionStage::absolute && gap_max < 1)
        throw std::invalid_argument("build_lambda_inequality: absolute stage needs gap_max >= 1");

    QuadraticNumber root = family.root;
    if (root.compare(mpq_class(1)) <= 0)
        throw std::invalid_argument("build_lambda_inequality: root must exceed 1");

    ReductionProblem problem;
    problem.policy = policy;
    problem.tau = [root](long bits) {
        return enclose_log(mpq_class(10), bits) / enclose_log(root, bits);
    };
    problem.tau_source = "log(10)/log(" + root.to_string() + ")";
    problem.log_base = [root](long bits) { return enclose_log(root, bits); };
    problem.base_description = root.to_string();
    problem.exponent_bound = exponent_bound;

    // A = ceil(2*rhs / log B), computed rigorously instead of hardcoding the
    // reference chain's 5 and 4.
    RealRecipe a_recipe = [root, rhs](long bits) {
        return CertifiedReal(mpq_class(2 * rhs)) / enclose_log(root, bits);
    };
    problem.bound_coefficient = mpq_class(certified_ceil(a_recipe, policy));

    auto add_label = [&](int digit, long gap) {
        QuadraticNumber lambda = family.lambda3_unit * QuadraticNumber(mpq_class(digit));
        std::string name = "d=" + std::to_string(digit);
        if (gap > 0) {
            QuadraticNumber one(mpq_class(1));
            lambda = lambda / (one - root.pow(-gap));
            name += ",g=" + std::to_string(gap);
        }
        if (lambda.sign() <= 0)
            throw std::invalid_argument("build_lambda_inequality: lambda must be positive for " + name);
        ReductionLabel label;
        label.name = name;
        label.exact_mu = exact_log_ratio(lambda, root);
        label.mu = [lambda, root](long bits) {
            return enclose_log(lambda, bits) / enclose_log(root, bits);
        };
        problem.mu_family.push_back(std::move(label));
    };

    for (int digit = family.digit_min; digit <= family.digit_max; ++digit) {
        if (stage == ReductionStage::gap) {
            add_label(digit, 0);
        } else {
            for (long gap = 1; gap <= gap_max; ++gap) add_label(digit, gap);
        }
    }
    return problem;
}

}  // namespace repdiff
