#include <cstdint>
#include <sstream>

#include <json.hpp>

#include "repdiff/pipeline.hpp"

namespace repdiff {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kEnclosureDigits = 30;

std::string fnv1a64(const std::string& data) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex;
    out.width(16);
    out.fill('0');
    out << hash;
    return out.str();
}

ordered_json enclosure_json(const CertifiedReal& x) {
    return {{"lo", decimal_lower(x.lo(), kEnclosureDigits)},
            {"hi", decimal_upper(x.hi(), kEnclosureDigits)}};
}

CertifiedReal enclosure_from_json(const ordered_json& j) {
    return {parse_rational(j.at("lo").get<std::string>()),
            parse_rational(j.at("hi").get<std::string>())};
}

ordered_json solutions_json(const std::vector<SearchSolution>& solutions) {
    ordered_json arr = ordered_json::array();
    for (const SearchSolution& s : solutions)
        arr.push_back({{"n", s.n}, {"m", s.m}, {"d", s.digit}, {"k", s.length}});
    return arr;
}

ordered_json config_json(const ProblemConfig& config) {
    ordered_json j;
    j["name"] = config.name;
    j["sequence"] = {{"name", config.sequence.name},
                     {"coeff_p", config.sequence.coeff_p.get_str()},
                     {"coeff_q", config.sequence.coeff_q.get_str()},
                     {"u0", config.sequence.u0.get_str()},
                     {"u1", config.sequence.u1.get_str()}};
    j["binet_divisor"] = config.binet_divisor.to_string();
    j["binet_combination"] = config.binet_sign < 0 ? "difference" : "sum";
    j["lambda3"] = config.lambda3_text;
    j["lambda3_unit"] = config.lambda3_num_unit.to_string();
    j["lambda3_denominator"] = config.lambda3_den.get_str();
    j["rhs_stage1"] = config.rhs_stage1;
    j["rhs_stage2"] = config.rhs_stage2;
    j["digit_min"] = config.digit_min;
    j["digit_max"] = config.digit_max;
    j["base"] = config.base;
    j["small_search_limit"] = config.small_search_limit;
    j["k_min"] = config.k_min;
    return j;
}

ordered_json stage_json(const StageChain& stage) {
    ordered_json j;
    j["l"] = 3;
    j["degree"] = 2;
    j["A1"] = enclosure_json(stage.a1);
    j["A2"] = enclosure_json(stage.a2);
    j["A3"] = enclosure_json(stage.a3);
    j["matveev_coefficient"] = enclosure_json(stage.coefficient);
    j["bound_constant"] = decimal_upper(stage.bound.constant.hi(), 10);
    j["log_power"] = stage.bound.log_power;
    j["statement"] = stage.bound.statement;
    j["description"] = stage.description;
    return j;
}

ordered_json reduction_json(const ReductionOutcome& r) {
    ordered_json j;
    j["q_index"] = r.q_index;
    j["q"] = r.q_used.get_str();
    j["A"] = decimal_upper(r.bound_coefficient, 10);
    j["epsilon_min"] = enclosure_json(r.epsilon_min);
    j["epsilon_min_label"] = r.epsilon_min_label;
    j["w_bound"] = r.w_bound;
    j["w_bound_epsilon_labels"] = r.w_bound_epsilon_labels;
    j["w_bound_exact_labels"] = r.w_bound_exact_labels;
    j["bits_used"] = r.bits_used;
    ordered_json labels;
    for (const auto& [name, eps] : r.per_label_epsilon) labels[name] = enclosure_json(eps);
    j["per_label_epsilon"] = labels;
    ordered_json exact = ordered_json::object();
    for (const auto& [name, w] : r.exact_label_bounds) exact[name] = w;
    j["exact_label_bounds"] = exact;
    return j;
}

std::string pm_string(const CertifiedReal& x) {
    mpq_class half_width = x.width() / 2;
    return decimal_lower(x.midpoint(), 6) + " (+-" + decimal_upper(half_width, 2) + ")";
}

std::string emit_text(const ProofCertificate& cert) {
    std::ostringstream out;
    const ProblemConfig& c = cert.config;
    out << "proof certificate " << cert.version << ": " << c.name << "\n";
    out << "verdict: " << cert.verdict << "\n";
    if (!cert.failure_reason.empty()) out << "failure: " << cert.failure_reason << "\n";
    out << "\n";
    out << "[problem] U(n+1) = " << c.sequence.coeff_p.get_str() << " U(n) - "
        << c.sequence.coeff_q.get_str() << " U(n-1), U0 = " << c.sequence.u0.get_str()
        << ", U1 = " << c.sequence.u1.get_str() << "\n";
    out << "          closed form (root^n " << (c.binet_sign < 0 ? "-" : "+")
        << " conj^n) / (" << c.binet_divisor.to_string() << "), root = "
        << c.sequence.alpha().to_string() << "\n";
    out << "          lambda3 = " << c.lambda3_text << ", digits " << c.digit_min << ".."
        << c.digit_max << ", repdigit length >= " << c.k_min << "\n";
    out << "\n";
    out << "[small search] n <= " << c.small_search_limit << ": " << cert.small_search.size()
        << " solutions\n";
    for (const SearchSolution& s : cert.small_search)
        out << "    n=" << s.n << " m=" << s.m << " d=" << s.digit << " k=" << s.length << "\n";
    out << "\n";
    out << "[non-vanishing] " << cert.nonvanishing_stage1.statement << "\n";
    out << "[non-vanishing] " << cert.nonvanishing_stage2.statement << "\n";
    out << "[exponents] " << cert.exponent_domination << "\n";
    out << "\n";
    out << "[stage 1] coefficient C1 = " << pm_string(cert.stage1_matveev.coefficient)
        << ", rounded chain: " << cert.stage1_matveev.bound.statement << "\n";
    out << "[stage 2] A3 = " << decimal_upper(cert.stage2_matveev.a3.hi(), 3)
        << " * (1+log n), coefficient C2 = " << pm_string(cert.stage2_matveev.coefficient)
        << ",\n          rounded chain: " << cert.stage2_matveev.bound.statement << "\n";
    out << "[bound] 2^2 H (log H)^2 = " << pm_string(cert.lemma2_value)
        << ", outward-rounded M = " << cert.lemma2_bound.get_str() << "\n";
    out << "[bound] " << cert.bound_verification << "\n";
    out << "[linearization] |e^z - 1| < y with y < 1/2 certified; multiplier "
        << cert.linear_multiplier << "\n";
    out << "\n";
    auto reduction_text = [&](const char* tag, const ReductionOutcome& r) {
        out << "[" << tag << "] q_" << r.q_index << " = " << r.q_used.get_str() << "\n";
        out << "    A = " << decimal_upper(r.bound_coefficient, 4)
            << ", min epsilon = " << pm_string(r.epsilon_min) << " at " << r.epsilon_min_label
            << " over " << (r.per_label_epsilon.size() + r.exact_label_bounds.size())
            << " family members\n";
        for (const auto& [name, w] : r.exact_label_bounds)
            out << "    member " << name
                << ": mu exactly rational; best-approximation bound w <= " << w << "\n";
        out << "    w <= " << r.w_bound << "\n";
    };
    reduction_text("reduction 1, w = n-m", cert.reduction1);
    reduction_text("reduction 2, w = n", cert.reduction2);
    out << "\n";
    out << "[closure] exhaustive re-search to n <= " << cert.closure.bound_checked << ": "
        << cert.closure.solutions.size() << " solutions\n";
    out << "[constants] log root = " << pm_string(cert.log_alpha) << "\n";
    out << "            log 10   = " << pm_string(cert.log_10) << "\n";
    out << "            tau      = " << pm_string(cert.tau) << "\n";
    return out.str();
}

ordered_json certificate_body(const ProofCertificate& cert) {
    ordered_json j;
    j["version"] = cert.version;
    j["problem"] = config_json(cert.config);
    j["small_search"] = solutions_json(cert.small_search);
    j["nonvanishing_stage1"] = cert.nonvanishing_stage1.statement;
    j["nonvanishing_stage2"] = cert.nonvanishing_stage2.statement;
    j["exponent_domination"] = cert.exponent_domination;
    j["stage1_matveev"] = stage_json(cert.stage1_matveev);
    j["stage2_matveev"] = stage_json(cert.stage2_matveev);
    j["lemma2_value"] = enclosure_json(cert.lemma2_value);
    j["lemma2_bound"] = cert.lemma2_bound.get_str();
    j["bound_verification"] = cert.bound_verification;
    j["linear_multiplier"] = cert.linear_multiplier;
    j["reduction1"] = reduction_json(cert.reduction1);
    j["q_stage1"] = cert.reduction1.q_used.get_str();
    j["epsilon_stage1"] = enclosure_json(cert.reduction1.epsilon_min);
    j["reduction2"] = reduction_json(cert.reduction2);
    j["q_stage2"] = cert.reduction2.q_used.get_str();
    j["epsilon_stage2"] = enclosure_json(cert.reduction2.epsilon_min);
    j["constants"] = {{"log_alpha", enclosure_json(cert.log_alpha)},
                      {"log_10", enclosure_json(cert.log_10)},
                      {"tau", enclosure_json(cert.tau)}};
    j["closure"] = {{"bound_checked", cert.closure.bound_checked},
                    {"k_min", cert.closure.k_min},
                    {"solutions", solutions_json(cert.closure.solutions)}};
    j["verdict"] = cert.verdict;
    j["failure_reason"] = cert.failure_reason;
    return j;
}

}  // namespace

std::string emit_certificate(const ProofCertificate& cert, CertificateFormat format) {
    if (format == CertificateFormat::text) return emit_text(cert);
    ordered_json body = certificate_body(cert);
    body["checksum"] = fnv1a64(body.dump(2));
    return body.dump(2) + "\n";
}

namespace {

void check_reduction(const ordered_json& r, const ordered_json& constants, const mpz_class& m_bound,
                     const std::string& tag, std::vector<std::string>& failures) {
    mpz_class q(r.at("q").get<std::string>());
    if (!(q > 6 * m_bound)) failures.push_back(tag + ": q does not exceed 6M");

    CertifiedReal log_alpha = enclosure_from_json(constants.at("log_alpha"));
    mpq_class a_coeff = parse_rational(r.at("A").get<std::string>());

    CertifiedReal eps_min = enclosure_from_json(r.at("epsilon_min"));
    if (!eps_min.certainly_positive()) failures.push_back(tag + ": epsilon_min not positive");

    bool found_min = false;
    mpq_class min_lo;
    long w_eps_recomputed = 0;
    bool all_decidable = true;
    for (const auto& [label, eps_json] : r.at("per_label_epsilon").items()) {
        CertifiedReal eps = enclosure_from_json(eps_json);
        if (!eps.certainly_positive()) {
            failures.push_back(tag + ": stored epsilon for " + label + " not positive");
            continue;
        }
        if (!found_min || eps.lo() < min_lo) {
            min_lo = eps.lo();
            found_min = true;
        }
        // floor(log(A q / eps) / log alpha) from stored data only.
        CertifiedReal ratio = CertifiedReal(a_coeff * mpq_class(q)) / eps;
        CertifiedReal threshold = enclose_log(ratio, 256) / log_alpha;
        mpz_class f_lo = floor_rational(threshold.lo());
        mpz_class f_hi = floor_rational(threshold.hi());
        if (f_lo == f_hi)
            w_eps_recomputed = std::max(w_eps_recomputed, f_lo.get_si());
        else
            all_decidable = false;
    }
    if (found_min && min_lo != eps_min.lo())
        failures.push_back(tag + ": epsilon_min is not the minimum of the per-label table");

    long w_eps_stored = r.at("w_bound_epsilon_labels").get<long>();
    if (all_decidable && w_eps_recomputed != w_eps_stored)
        failures.push_back(tag + ": w_bound_epsilon_labels mismatch (stored " +
                           std::to_string(w_eps_stored) + ", recomputed " +
                           std::to_string(w_eps_recomputed) + ")");
    else if (w_eps_recomputed > w_eps_stored)
        failures.push_back(tag + ": stored w_bound_epsilon_labels too small");

    long w_exact = r.at("w_bound_exact_labels").get<long>();
    long w_total = r.at("w_bound").get<long>();
    if (w_total != std::max(w_eps_stored, w_exact))
        failures.push_back(tag + ": w_bound is not the max of its parts");
}

}  // namespace

std::vector<std::string> revalidate_certificate(const std::string& structured_text) {
    std::vector<std::string> failures;
    ordered_json doc;
    try {
        doc = ordered_json::parse(structured_text);
    } catch (const std::exception& e) {
        return {std::string("malformed JSON: ") + e.what()};
    }
    try {
        if (doc.at("version").get<std::string>() != "cert-v1") failures.push_back("unknown certificate version");

        std::string stored_checksum = doc.at("checksum").get<std::string>();
        ordered_json body = doc;
        body.erase("checksum");
        if (fnv1a64(body.dump(2)) != stored_checksum)
            failures.push_back("checksum mismatch: certificate content was altered");

        // Enclosure sanity everywhere an enclosure appears.
        auto check_enclosure = [&failures](const ordered_json& j, const std::string& what) {
            try {
                CertifiedReal x = enclosure_from_json(j);
                (void)x;
            } catch (const std::exception&) {
                failures.push_back(what + ": malformed enclosure (lo > hi or bad literal)");
            }
        };
        for (const char* key : {"lemma2_value", "epsilon_stage1", "epsilon_stage2"})
            check_enclosure(doc.at(key), key);
        for (const char* key : {"log_alpha", "log_10", "tau"})
            check_enclosure(doc.at("constants").at(key), key);

        mpz_class m_bound(doc.at("lemma2_bound").get<std::string>());

        // M must be the outward rounding of the extracted bound.
        CertifiedReal lemma2_value = enclosure_from_json(doc.at("lemma2_value"));
        mpq_class m_expected = round_up_two_significant(lemma2_value.hi());
        if (mpq_class(m_bound) != m_expected)
            failures.push_back("lemma2_bound is not the two-significant-figure rounding of lemma2_value");

        // Bound-extraction consistency from the stored stage-2 constant.
        CertifiedReal log_alpha = enclosure_from_json(doc.at("constants").at("log_alpha"));
        mpq_class stage2_constant = parse_rational(doc.at("stage2_matveev").at("bound_constant").get<std::string>());
        CertifiedReal h_value = CertifiedReal(stage2_constant) / log_alpha;
        CertifiedReal log_h = enclose_log(h_value, 256);
        CertifiedReal recomputed = CertifiedReal(mpq_class(4)) * h_value * log_h * log_h;
        if (!recomputed.overlaps(lemma2_value))
            failures.push_back("lemma2_value inconsistent with the stored stage-2 constant");

        // Rounding chain: folded constant = ceil2sf(ceil2sf(C.hi) + log(rhs).hi).
        for (const char* stage_key : {"stage1_matveev", "stage2_matveev"}) {
            const ordered_json& stage = doc.at(stage_key);
            CertifiedReal coeff = enclosure_from_json(stage.at("matveev_coefficient"));
            int rhs = std::string(stage_key) == "stage1_matveev"
                          ? doc.at("problem").at("rhs_stage1").get<int>()
                          : doc.at("problem").at("rhs_stage2").get<int>();
            mpq_class rounded = round_up_two_significant(coeff.hi());
            mpq_class folded = round_up_two_significant(rounded + enclose_log(mpq_class(rhs), 128).hi());
            mpq_class stored = parse_rational(stage.at("bound_constant").get<std::string>());
            if (stored != folded)
                failures.push_back(std::string(stage_key) + ": bound_constant does not match the rounding chain");
        }

        check_reduction(doc.at("reduction1"), doc.at("constants"), m_bound, "reduction1", failures);
        check_reduction(doc.at("reduction2"), doc.at("constants"), m_bound, "reduction2", failures);

        // Top-level mirrors must agree with the reduction records.
        if (doc.at("q_stage1").get<std::string>() != doc.at("reduction1").at("q").get<std::string>())
            failures.push_back("q_stage1 mirror mismatch");
        if (doc.at("q_stage2").get<std::string>() != doc.at("reduction2").at("q").get<std::string>())
            failures.push_back("q_stage2 mirror mismatch");

        // Verdict implications.
        long limit = doc.at("problem").at("small_search_limit").get<long>();
        long closure_bound = doc.at("closure").at("bound_checked").get<long>();
        long n_star = doc.at("reduction2").at("w_bound").get<long>();
        if (closure_bound < std::max(limit, n_star))
            failures.push_back("closure bound does not cover max(small_search_limit, n bound)");
        if (doc.at("verdict").get<std::string>() == "proven") {
            if (!doc.at("small_search").empty()) failures.push_back("proven verdict with small-range solutions");
            if (!doc.at("closure").at("solutions").empty())
                failures.push_back("proven verdict with closure solutions");
        }
    } catch (const std::exception& e) {
        failures.push_back(std::string("certificate structure: ") + e.what());
    }
    return failures;
}

}  // namespace repdiff
