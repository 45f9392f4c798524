#pragma once

// Problem configuration, the end-to-end proof orchestrator, and certificate
// emission / re-validation.
//
// A ProblemConfig describes one instance of the problem "no repdigit is the
// difference of two terms of this sequence": the recurrence, its closed-form
// data, the coefficient lambda_3 = unit * d of the associated linear form,
// and the right-hand-side constants of the two stages.  run_proof executes
// the full chain -- small-range search, non-vanishing certificates, the two
// linear-form stages, the self-referential bound extraction, both reductions
// and the closure search -- and assembles a ProofCertificate that either
// proves the statement or reports exactly which stage failed.

#include <optional>
#include <string>
#include <vector>

#include "repdiff/baker_davenport.hpp"
#include "repdiff/certified_real.hpp"
#include "repdiff/heights.hpp"
#include "repdiff/matveev.hpp"
#include "repdiff/quadratic.hpp"
#include "repdiff/repdigit.hpp"
#include "repdiff/sequence.hpp"

namespace repdiff {

struct ProblemConfig {
    SequenceSpec sequence;
    std::string name;

    // Closed form (alpha^n + binet_sign * beta^n) / binet_divisor.
    QuadraticNumber binet_divisor;
    int binet_sign = -1;

    // lambda_3(d) = lambda3_num_unit * d / lambda3_den; the two parts are
    // kept separate because the height estimates follow the unreduced
    // numerator/denominator split.
    QuadraticNumber lambda3_num_unit;
    mpz_class lambda3_den = 1;
    std::string lambda3_text;

    int rhs_stage1 = 0;  // |Gamma_1| < rhs / alpha^(n-m)
    int rhs_stage2 = 0;  // |Gamma_2| < rhs / alpha^n

    int digit_min = 1, digit_max = 9;
    int base = 10;
    long small_search_limit = 50;
    int k_min = 2;

    explicit ProblemConfig(SequenceSpec seq) : sequence(std::move(seq)) {}

    QuadraticNumber lambda3(int digit) const;

    // Checks internal consistency, including the closed-form round-trip
    // against the recurrence for n = 0..10.  Throws std::invalid_argument
    // naming the offending field.
    void validate() const;

    static ProblemConfig builtin(const std::string& name);
    static ProblemConfig from_file(const std::string& path);
    static std::vector<std::string> builtin_names();
};

struct StageChain {
    CertifiedReal a1, a2, a3;      // Matveev height inputs actually used
    CertifiedReal coefficient;     // unrounded product C
    BoundExpression bound;         // folded two-significant-figure bound
    std::string description;
};

struct ClosureRecord {
    long bound_checked = 0;
    int k_min = 2;
    std::vector<SearchSolution> solutions;
};

struct ProofCertificate {
    std::string version = "cert-v1";
    ProblemConfig config;
    std::vector<SearchSolution> small_search;

    NonvanishingCertificate nonvanishing_stage1, nonvanishing_stage2;
    std::string exponent_domination;  // the certified k < n remark

    StageChain stage1_matveev, stage2_matveev;

    CertifiedReal lemma2_value;  // enclosure of 2^r H (log H)^r
    mpz_class lemma2_bound;      // M, the outward-rounded bound fed to the reductions
    // Direct certification that every n >= M violates the stage-2
    // inequality, independent of the extraction lemma's fine print.
    std::string bound_verification;

    int linear_multiplier = 0;  // the certified |e^z-1| factor (2)

    ReductionOutcome reduction1;  // w = n - m
    ReductionOutcome reduction2;  // w = n

    CertifiedReal log_alpha, log_10, tau;

    ClosureRecord closure;

    std::string verdict = "not-proven";
    std::string failure_reason;

    explicit ProofCertificate(ProblemConfig cfg) : config(std::move(cfg)) {}
};

ProofCertificate run_proof(const ProblemConfig& config,
                           PrecisionPolicy policy = PrecisionPolicy::from_environment());

enum class CertificateFormat { text, structured };

std::string emit_certificate(const ProofCertificate& cert, CertificateFormat format);

// Re-checks a structured certificate without redoing the expensive
// transcendental work: checksum, enclosure well-formedness, and the
// arithmetic relations between stored fields.  Returns the list of failed
// checks (empty means valid).
std::vector<std::string> revalidate_certificate(const std::string& structured_text);

struct CheckpointResult {
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
    std::string note;
};

// Runs both built-in configurations and diffs every tracked checkpoint
// against the previously reported reference values.
std::vector<CheckpointResult> verify_paper(PrecisionPolicy policy = PrecisionPolicy::from_environment());

}  // namespace repdiff
