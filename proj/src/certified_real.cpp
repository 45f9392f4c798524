#include "repdiff/certified_real.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include <mpfr.h>

namespace repdiff {

void PrecisionPolicy::validate() const {
    if (initial_bits < 64) throw std::invalid_argument("PrecisionPolicy: initial_bits must be >= 64");
    if (max_bits < initial_bits) throw std::invalid_argument("PrecisionPolicy: max_bits < initial_bits");
    if (escalation_factor < 2) throw std::invalid_argument("PrecisionPolicy: escalation_factor must be >= 2");
}

PrecisionPolicy PrecisionPolicy::from_environment() {
    PrecisionPolicy policy;
    const char* env = std::getenv("REPDIFF_PRECISION");
    if (env == nullptr || *env == '\0') return policy;
    std::string text(env);
    auto colon = text.find(':');
    try {
        policy.initial_bits = std::stol(text.substr(0, colon));
        if (colon != std::string::npos) policy.max_bits = std::stol(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("REPDIFF_PRECISION must be 'bits' or 'bits:maxbits', got '" + text + "'");
    }
    policy.validate();
    return policy;
}

CertifiedReal::CertifiedReal(mpq_class lo, mpq_class hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw std::invalid_argument("CertifiedReal: lo > hi");
}

CertifiedReal CertifiedReal::operator+(const CertifiedReal& o) const {
    return {lo_ + o.lo_, hi_ + o.hi_};
}

CertifiedReal CertifiedReal::operator-(const CertifiedReal& o) const {
    return {lo_ - o.hi_, hi_ - o.lo_};
}

CertifiedReal CertifiedReal::operator-() const { return {-hi_, -lo_}; }

CertifiedReal CertifiedReal::operator*(const CertifiedReal& o) const {
    mpq_class a = lo_ * o.lo_, b = lo_ * o.hi_, c = hi_ * o.lo_, d = hi_ * o.hi_;
    mpq_class lo = std::min(std::min(a, b), std::min(c, d));
    mpq_class hi = std::max(std::max(a, b), std::max(c, d));
    return {std::move(lo), std::move(hi)};
}

CertifiedReal CertifiedReal::operator/(const CertifiedReal& o) const {
    if (o.lo_ <= 0 && o.hi_ >= 0)
        throw std::domain_error("CertifiedReal: division by interval containing zero");
    mpq_class a = lo_ / o.lo_, b = lo_ / o.hi_, c = hi_ / o.lo_, d = hi_ / o.hi_;
    mpq_class lo = std::min(std::min(a, b), std::min(c, d));
    mpq_class hi = std::max(std::max(a, b), std::max(c, d));
    return {std::move(lo), std::move(hi)};
}

CertifiedReal CertifiedReal::abs() const {
    if (lo_ >= 0) return *this;
    if (hi_ <= 0) return -*this;
    return {mpq_class(0), std::max(mpq_class(-lo_), hi_)};
}

CertifiedReal CertifiedReal::hull(const CertifiedReal& a, const CertifiedReal& b) {
    return {std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
}

CertifiedReal CertifiedReal::meet(const CertifiedReal& a, const CertifiedReal& b) {
    mpq_class lo = std::max(a.lo_, b.lo_);
    mpq_class hi = std::min(a.hi_, b.hi_);
    if (lo > hi) throw std::domain_error("CertifiedReal: empty intersection");
    return {std::move(lo), std::move(hi)};
}

std::string CertifiedReal::to_string(int sig_digits) const {
    return "[" + decimal_lower(lo_, sig_digits) + ", " + decimal_upper(hi_, sig_digits) + "]";
}

namespace {

// mpfr value -> exact rational (mpfr floats are dyadic).
mpq_class mpq_from_mpfr(const mpfr_t x) {
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, x);
    mpq_class out(q);
    mpq_clear(q);
    return out;
}

}  // namespace

CertifiedReal enclose_log(const mpq_class& x, long bits) {
    if (x <= 0) throw std::domain_error("enclose_log: argument must be positive");
    if (x == 1) return CertifiedReal(mpq_class(0));
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max(bits, 32L) + 8);
    mpfr_t t, r;
    mpfr_init2(t, prec);
    mpfr_init2(r, prec);

    mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDD);
    mpfr_log(r, t, MPFR_RNDD);
    mpq_class lo = mpq_from_mpfr(r);

    mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDU);
    mpfr_log(r, t, MPFR_RNDU);
    mpq_class hi = mpq_from_mpfr(r);

    mpfr_clear(t);
    mpfr_clear(r);
    return {std::move(lo), std::move(hi)};
}

CertifiedReal enclose_log(const CertifiedReal& x, long bits) {
    if (x.lo() <= 0) throw std::domain_error("enclose_log: interval must be strictly positive");
    return {enclose_log(x.lo(), bits).lo(), enclose_log(x.hi(), bits).hi()};
}

namespace {

template <typename Decide>
auto escalate(const CertifiedReal& first, const RealRecipe& refine, const PrecisionPolicy& policy,
              Decide decide) {
    policy.validate();
    CertifiedReal current = first;
    long bits = policy.initial_bits;
    while (true) {
        auto result = decide(current);
        if (result.has_value()) return result;
        bits *= policy.escalation_factor;
        if (bits > policy.max_bits || !refine) return result;  // undecided
        current = refine(bits);
    }
}

}  // namespace

Sign certified_sign(const CertifiedReal& first, const RealRecipe& refine,
                    const PrecisionPolicy& policy) {
    auto decision = escalate(first, refine, policy, [](const CertifiedReal& x) -> std::optional<Sign> {
        if (x.certainly_positive()) return Sign::positive;
        if (x.certainly_negative()) return Sign::negative;
        return std::nullopt;
    });
    return decision.value_or(Sign::zero_unprovable);
}

Sign certified_sign(const RealRecipe& recipe, const PrecisionPolicy& policy) {
    return certified_sign(recipe(policy.initial_bits), recipe, policy);
}

mpz_class certified_floor(const CertifiedReal& first, const RealRecipe& refine,
                          const PrecisionPolicy& policy) {
    auto decision = escalate(first, refine, policy,
                             [](const CertifiedReal& x) -> std::optional<mpz_class> {
                                 mpz_class f_lo = floor_rational(x.lo());
                                 mpz_class f_hi = floor_rational(x.hi());
                                 if (f_lo == f_hi) return f_lo;
                                 return std::nullopt;
                             });
    if (!decision.has_value())
        throw PrecisionExhausted("certified_floor: enclosure straddles an integer at maximum precision");
    return *decision;
}

mpz_class certified_floor(const RealRecipe& recipe, const PrecisionPolicy& policy) {
    return certified_floor(recipe(policy.initial_bits), recipe, policy);
}

mpz_class certified_ceil(const RealRecipe& recipe, const PrecisionPolicy& policy) {
    RealRecipe negated = [&recipe](long bits) { return -recipe(bits); };
    return -certified_floor(negated(policy.initial_bits), negated, policy);
}

namespace {

// Exact distance from a rational point to the nearest integer.
mpq_class point_int_distance(const mpq_class& x) {
    mpq_class fr = x - mpq_class(floor_rational(x));
    return std::min(fr, mpq_class(1 - fr));
}

}  // namespace

CertifiedReal nearest_integer_distance(const CertifiedReal& x) {
    const mpq_class half(1, 2);
    // Wide intervals cover a full period.
    if (x.width() >= 1) return {mpq_class(0), half};

    mpq_class f_lo = point_int_distance(x.lo());
    mpq_class f_hi = point_int_distance(x.hi());

    bool integer_inside = ceil_rational(x.lo()) <= floor_rational(x.hi());
    bool half_inside = ceil_rational(x.lo() - half) <= floor_rational(x.hi() - half);

    mpq_class lo = integer_inside ? mpq_class(0) : std::min(f_lo, f_hi);
    mpq_class hi = half_inside ? half : std::max(f_lo, f_hi);
    return {std::move(lo), std::move(hi)};
}

mpz_class floor_rational(const mpq_class& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

mpz_class ceil_rational(const mpq_class& x) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

mpq_class pow10(long k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
    return k >= 0 ? mpq_class(p) : mpq_class(1) / mpq_class(p);
}

namespace {

// Exponent e with 10^e <= x < 10^(e+1), for x > 0, by exact comparison.
long decimal_exponent(const mpq_class& x) {
    // Rough start from bit sizes, then correct exactly.
    long num_bits = static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2));
    long den_bits = static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
    long e = static_cast<long>((num_bits - den_bits) * 0.30103);
    while (x < pow10(e)) --e;
    while (x >= pow10(e + 1)) ++e;
    return e;
}

}  // namespace

mpq_class round_up_two_significant(const mpq_class& x) {
    if (x == 0) return x;
    if (x < 0) throw std::invalid_argument("round_up_two_significant: argument must be >= 0");
    long e = decimal_exponent(x);
    // scaled in [10, 100); take the ceiling to get at most two digits.
    mpq_class scaled = x / pow10(e - 1);
    mpz_class digits = ceil_rational(scaled);
    return mpq_class(digits) * pow10(e - 1);
}

mpq_class round_up_decimal(const mpq_class& x, int places) {
    mpq_class scale = pow10(places);
    return mpq_class(ceil_rational(x * scale)) / scale;
}

namespace {

std::string format_digits(bool negative, const mpz_class& digits, long exponent, int sig) {
    std::string s = digits.get_str();
    // Renormalize a carried-over extra digit (e.g. ceil produced 10^sig).
    if (static_cast<int>(s.size()) > sig) {
        s.pop_back();
        ++exponent;
    }
    std::string out = negative ? "-" : "";
    if (exponent >= -6 && exponent <= 6) {
        if (exponent >= static_cast<long>(s.size()) - 1) {
            out += s + std::string(exponent - s.size() + 1, '0');
        } else if (exponent >= 0) {
            out += s.substr(0, exponent + 1) + "." + s.substr(exponent + 1);
        } else {
            out += "0." + std::string(-exponent - 1, '0') + s;
        }
        // Trim trailing zeros in the fractional part.
        if (out.find('.') != std::string::npos) {
            out.erase(out.find_last_not_of('0') + 1);
            if (out.back() == '.') out.pop_back();
        }
    } else {
        std::string mantissa = s.substr(0, 1);
        std::string rest = s.substr(1);
        rest.erase(rest.find_last_not_of('0') + 1);
        out += mantissa;
        if (!rest.empty()) out += "." + rest;
        out += "e" + std::to_string(exponent);
    }
    return out;
}

std::string decimal_directed(const mpq_class& x, int sig, bool round_down) {
    if (sig < 1) throw std::invalid_argument("decimal rendering needs at least one digit");
    if (x == 0) return "0";
    bool negative = x < 0;
    mpq_class mag = negative ? mpq_class(-x) : x;
    long e = decimal_exponent(mag);
    mpq_class scaled = mag * pow10(sig - 1 - e);
    // Outward rounding: lower endpoints toward -inf, upper toward +inf.
    bool magnitude_down = (round_down != negative);
    mpz_class digits = magnitude_down ? floor_rational(scaled) : ceil_rational(scaled);
    return format_digits(negative, digits, e, sig);
}

}  // namespace

std::string decimal_lower(const mpq_class& x, int sig_digits) {
    return decimal_directed(x, sig_digits, true);
}

std::string decimal_upper(const mpq_class& x, int sig_digits) {
    return decimal_directed(x, sig_digits, false);
}

mpq_class parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("parse_rational: empty input");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("parse_rational: bad fraction '" + text + "'");
        q.canonicalize();
        if (q.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
        return q;
    }

    bool negative = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = (s[i++] == '-');

    std::string int_part, frac_part;
    long exponent = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) int_part += s[i++];
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) frac_part += s[i++];
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        std::size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw std::invalid_argument("parse_rational: bad exponent in '" + text + "'");
        exponent = std::stol(s.substr(start, i - start));
    }
    if (i != s.size() || (int_part.empty() && frac_part.empty()))
        throw std::invalid_argument("parse_rational: bad literal '" + text + "'");

    mpz_class mantissa((int_part.empty() ? "0" : int_part) + frac_part, 10);
    mpq_class value = mpq_class(mantissa) * pow10(exponent - static_cast<long>(frac_part.size()));
    if (negative) value = -value;
    return value;
}

}  // namespace repdiff
