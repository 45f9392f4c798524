// repdiff: rigorous bound chains and exhaustive-search certificates for
// "no repdigit is a difference of two terms" problems over balancing-type
// recurrences.
//
// Exit codes: 0 success / proven, 1 not-proven or failed checks, 2 usage.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "repdiff/pipeline.hpp"

namespace {

using namespace repdiff;

ProblemConfig load_config(const std::string& spec) {
    for (const std::string& name : ProblemConfig::builtin_names())
        if (spec == name) return ProblemConfig::builtin(spec);
    return ProblemConfig::from_file(spec);
}

const SequenceSpec& sequence_by_name(const std::string& name) {
    if (name == "balancing") return SequenceSpec::balancing();
    if (name == "lucas-balancing" || name == "lucas_balancing") return SequenceSpec::lucas_balancing();
    throw CLI::ValidationError("--sequence", "unknown sequence '" + name +
                                                 "' (expected balancing or lucas-balancing)");
}

int cmd_search(const std::string& sequence, long n_max, int k_min) {
    const SequenceSpec& spec = sequence_by_name(sequence);
    std::vector<SearchSolution> solutions = exhaustive_search(spec, n_max, k_min);
    for (const SearchSolution& s : solutions)
        std::cout << "n=" << s.n << " m=" << s.m << " d=" << s.digit << " k=" << s.length << "\n";
    std::cout << solutions.size() << " solutions\n";
    return 0;
}

int cmd_heights(const PrecisionPolicy& policy) {
    const long bits = policy.initial_bits;
    for (const std::string& name : ProblemConfig::builtin_names()) {
        ProblemConfig config = ProblemConfig::builtin(name);
        QuadraticNumber alpha = config.sequence.alpha();
        std::cout << "[" << name << "]\n";
        std::cout << "  h(" << alpha.to_string()
                  << ") = " << height_exact(alpha, bits).value.to_string(10) << " (exact)\n";
        std::cout << "  h(10) = " << height_exact(mpq_class(10), bits).value.to_string(10)
                  << " (exact)\n";
        for (int d = config.digit_min; d <= config.digit_max; ++d) {
            QuadraticNumber lambda = config.lambda3(d);
            HeightExpr tree = HeightExpr::quotient(
                HeightExpr::leaf(config.lambda3_num_unit * QuadraticNumber(mpz_class(d))),
                HeightExpr::leaf(mpq_class(config.lambda3_den)));
            std::cout << "  lambda3(d=" << d << ") = " << lambda.to_string()
                      << ": exact " << height_exact(lambda, bits).value.to_string(8)
                      << ", estimate " << tree.estimate(bits).value.to_string(8) << "\n";
        }
    }
    return 0;
}

int cmd_matveev(int l, int degree, const std::vector<std::string>& height_tokens,
                const PrecisionPolicy& policy) {
    const long bits = policy.initial_bits;
    LinearFormProblem problem;
    problem.multiplicand_count = l;
    problem.field_degree = degree;
    QuadraticNumber alpha = SequenceSpec::balancing().alpha();
    for (const std::string& token : height_tokens) {
        if (token == "log(alpha)" || token == "logalpha")
            problem.heights.push_back(enclose_log(alpha, bits));
        else if (token == "log(10)" || token == "log10")
            problem.heights.push_back(enclose_log(mpq_class(10), bits));
        else if (token == "2log(10)" || token == "2log10")
            problem.heights.push_back(enclose_log(mpq_class(100), bits));
        else
            problem.heights.push_back(CertifiedReal(parse_rational(token)));
        problem.gamma_meta.push_back("A = " + token);
    }
    CertifiedReal c = matveev_coefficient(problem, bits);
    std::cout << "coefficient C = " << c.to_string(10) << "\n";
    std::cout << "rounded (2 significant figures, outward): "
              << decimal_upper(round_up_two_significant(c.hi()), 2) << "\n";
    std::cout << "log|Gamma| > -C * (1 + log " << problem.exponent_symbol << ")\n";
    return 0;
}

int cmd_cf(long depth, const std::string& tau_spec, const PrecisionPolicy& policy) {
    RealRecipe tau;
    std::string source;
    if (tau_spec.empty() || tau_spec == "log(10)/log(alpha)") {
        QuadraticNumber alpha = SequenceSpec::balancing().alpha();
        tau = [alpha](long bits) {
            return enclose_log(mpq_class(10), bits) / enclose_log(alpha, bits);
        };
        source = "log(10)/log(" + alpha.to_string() + ")";
    } else {
        mpq_class value = parse_rational(tau_spec);
        tau = [value](long) { return CertifiedReal(value); };
        source = tau_spec;
    }
    ContinuedFraction cf(tau, source, policy);
    std::cout << "tau = " << source << "\n";
    for (long i = 0; i <= depth; ++i) {
        try {
            const Convergent& c = cf.at(static_cast<std::size_t>(i));
            std::cout << "i=" << i << " a=" << c.partial_quotient.get_str() << " p=" << c.p.get_str()
                      << " q=" << c.q.get_str() << "\n";
        } catch (const std::out_of_range&) {
            std::cout << "(expansion terminates after " << cf.known_count() << " quotients)\n";
            break;
        }
    }
    return 0;
}

int cmd_reduce(const std::string& config_spec, int stage, const std::string& bound_text,
               long gap_max, const PrecisionPolicy& policy) {
    ProblemConfig config = load_config(config_spec);
    config.validate();

    mpz_class m_bound;
    if (!bound_text.empty()) {
        mpq_class parsed = parse_rational(bound_text);
        if (parsed.get_den() != 1) throw CLI::ValidationError("--bound", "must be an integer");
        m_bound = parsed.get_num();
    } else {
        // Self-contained default: run the linear-form chain to get M.
        ProofCertificate cert = run_proof(config, policy);
        if (cert.lemma2_bound == 0)
            throw std::runtime_error("could not derive M: " + cert.failure_reason);
        m_bound = cert.lemma2_bound;
        if (stage == 2 && gap_max <= 0) gap_max = cert.reduction1.w_bound;
        std::cout << "derived M = " << m_bound.get_str() << "\n";
    }
    if (stage == 2 && gap_max <= 0)
        throw CLI::ValidationError("--gap-max", "stage 2 needs --gap-max (or omit --bound to derive it)");

    LambdaFamilySpec family;
    family.lambda3_unit = config.lambda3_num_unit / QuadraticNumber(config.lambda3_den);
    family.root = config.sequence.alpha();
    family.rhs_stage1 = config.rhs_stage1;
    family.rhs_stage2 = config.rhs_stage2;
    family.digit_min = config.digit_min;
    family.digit_max = config.digit_max;

    ReductionOutcome outcome = reduce(build_lambda_inequality(
        stage == 1 ? ReductionStage::gap : ReductionStage::absolute, family, m_bound, gap_max, policy));

    std::cout << "stage " << stage << " (" << (stage == 1 ? "w = n-m" : "w = n") << ")\n";
    std::cout << "q_" << outcome.q_index << " = " << outcome.q_used.get_str() << "\n";
    std::cout << "A = " << decimal_upper(outcome.bound_coefficient, 4) << "\n";
    std::cout << "min epsilon = " << outcome.epsilon_min.to_string(8) << " at "
              << outcome.epsilon_min_label << "\n";
    for (const auto& [name, w] : outcome.exact_label_bounds)
        std::cout << "exact-mu member " << name << ": w <= " << w << "\n";
    std::cout << "w <= " << outcome.w_bound << "\n";
    return 0;
}

int cmd_prove(const std::string& config_spec, const std::string& out_path, bool text,
              const PrecisionPolicy& policy) {
    ProblemConfig config = load_config(config_spec);
    ProofCertificate cert = run_proof(config, policy);
    std::string document =
        emit_certificate(cert, text ? CertificateFormat::text : CertificateFormat::structured);
    if (out_path.empty()) {
        std::cout << document;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
        out << document;
        std::cout << "certificate written to " << out_path << " (verdict: " << cert.verdict << ")\n";
    }
    if (cert.verdict != "proven") {
        std::cerr << "not proven: " << cert.failure_reason << "\n";
        return 1;
    }
    return 0;
}

int cmd_revalidate(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::string> failures = revalidate_certificate(text);
    if (failures.empty()) {
        std::cout << "certificate valid\n";
        return 0;
    }
    for (const std::string& f : failures) std::cout << "FAIL " << f << "\n";
    return 1;
}

int cmd_verify_paper(const PrecisionPolicy& policy) {
    std::vector<CheckpointResult> results = verify_paper(policy);
    std::size_t passed = 0;
    for (const CheckpointResult& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": expected " << r.expected
                  << ", computed " << r.computed << "\n";
        if (!r.note.empty()) std::cout << "     note: " << r.note << "\n";
        if (r.pass) ++passed;
    }
    std::cout << passed << "/" << results.size() << " checkpoints reproduced\n";
    return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rigorous repdigit-difference proof toolkit"};
    app.require_subcommand(1);

    std::string precision_spec;
    app.add_option("--precision", precision_spec,
                   "precision policy 'bits' or 'bits:maxbits' (overrides REPDIFF_PRECISION)");

    auto policy = [&precision_spec]() {
        if (precision_spec.empty()) return PrecisionPolicy::from_environment();
        PrecisionPolicy p;
        auto colon = precision_spec.find(':');
        p.initial_bits = std::stol(precision_spec.substr(0, colon));
        if (colon != std::string::npos) p.max_bits = std::stol(precision_spec.substr(colon + 1));
        p.validate();
        return p;
    };

    // search
    std::string seq_name = "balancing";
    long n_max = 50;
    int k_min = 2;
    CLI::App* search = app.add_subcommand("search", "exhaustive small-range witness search");
    search->add_option("--sequence", seq_name, "balancing | lucas-balancing")->required();
    search->add_option("--n-max", n_max, "largest index to search")->required();
    search->add_option("--k-min", k_min, "smallest repdigit length (1 or 2)")->capture_default_str();

    // heights
    CLI::App* heights = app.add_subcommand("heights", "exact and estimated heights of the built-in coefficients");

    // matveev
    int l = 3, degree = 2;
    std::vector<std::string> height_tokens;
    CLI::App* matveev = app.add_subcommand("matveev", "evaluate a linear-form coefficient");
    matveev->add_option("--l", l, "number of multiplicands")->capture_default_str();
    matveev->add_option("--degree", degree, "field degree")->capture_default_str();
    matveev->add_option("--A", height_tokens,
                        "height input: log(alpha), log(10), 2log(10), or a rational/decimal literal")
        ->required();

    // cf
    long depth = 65;
    std::string tau_spec;
    CLI::App* cf = app.add_subcommand("cf", "continued-fraction convergents of tau");
    cf->add_option("--depth", depth, "last convergent index to print")->capture_default_str();
    cf->add_option("--tau", tau_spec, "default log(10)/log(alpha); or an exact rational like 7/3");

    // reduce
    std::string reduce_config = "balancing";
    int stage = 1;
    std::string bound_text;
    long gap_max = 0;
    CLI::App* reduce_cmd = app.add_subcommand("reduce", "run one reduction stage");
    reduce_cmd->add_option("--config", reduce_config, "built-in name or config file")->required();
    reduce_cmd->add_option("--stage", stage, "1 (w = n-m) or 2 (w = n)")->check(CLI::Range(1, 2))->required();
    reduce_cmd->add_option("--bound", bound_text, "exponent bound M (derived from the chain when omitted)");
    reduce_cmd->add_option("--gap-max", gap_max, "stage-2 gap range (derived when --bound omitted)");

    // prove
    std::string prove_config = "balancing";
    std::string out_path;
    bool as_text = false;
    CLI::App* prove = app.add_subcommand("prove", "run the full proof chain and emit a certificate");
    prove->add_option("--config", prove_config, "built-in name or config file")->required();
    prove->add_option("--out", out_path, "write the certificate to a file instead of stdout");
    prove->add_flag("--text", as_text, "emit the narrative text format instead of JSON");

    // revalidate
    std::string cert_path;
    CLI::App* revalidate = app.add_subcommand("revalidate", "re-check a structured certificate");
    revalidate->add_option("certificate", cert_path, "certificate file")->required();

    // verify-paper
    CLI::App* verify = app.add_subcommand("verify-paper",
                                          "diff both built-in proofs against the reported reference values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (search->parsed()) return cmd_search(seq_name, n_max, k_min);
        if (heights->parsed()) return cmd_heights(policy());
        if (matveev->parsed()) return cmd_matveev(l, degree, height_tokens, policy());
        if (cf->parsed()) return cmd_cf(depth, tau_spec, policy());
        if (reduce_cmd->parsed()) return cmd_reduce(reduce_config, stage, bound_text, gap_max, policy());
        if (prove->parsed()) return cmd_prove(prove_config, out_path, as_text, policy());
        if (revalidate->parsed()) return cmd_revalidate(cert_path);
        if (verify->parsed()) return cmd_verify_paper(policy());
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
