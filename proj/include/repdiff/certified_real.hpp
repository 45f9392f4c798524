#pragma once

// Rational-endpoint interval arithmetic with certified decision procedures.
//
// A CertifiedReal is a closed interval [lo, hi] with exact rational endpoints
// that is guaranteed to contain the true value of the quantity it models.
// Field operations on intervals are exact (no rounding is ever needed on
// rational endpoints); approximation enters only through enclose_log, whose
// endpoints are produced by directed rounding.  Every sign, floor and
// threshold decision made anywhere in this project goes through the certified
// routines below, which refine the operand at increasing precision until the
// enclosure settles the question or the precision cap is reached.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace repdiff {

// Escalation schedule for certified decisions.  initial_bits is the working
// precision of the first evaluation; on an undecidable enclosure the
// precision is multiplied by escalation_factor until max_bits is exceeded.
// The cap exists so that quantities that are exactly zero (and therefore can
// never be certified nonzero) terminate with a distinct report instead of
// looping forever.
struct PrecisionPolicy {
    long initial_bits = 192;
    long max_bits = 1 << 20;
    int escalation_factor = 2;

    void validate() const;

    // Reads the optional REPDIFF_PRECISION override ("initial" or
    // "initial:max", both in bits).
    static PrecisionPolicy from_environment();
};

class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CertifiedReal {
public:
    CertifiedReal() : lo_(0), hi_(0) {}
    explicit CertifiedReal(const mpq_class& exact) : lo_(exact), hi_(exact) {}
    explicit CertifiedReal(long exact) : lo_(exact), hi_(exact) {}
    CertifiedReal(mpq_class lo, mpq_class hi);

    const mpq_class& lo() const { return lo_; }
    const mpq_class& hi() const { return hi_; }
    mpq_class width() const { return hi_ - lo_; }
    mpq_class midpoint() const { return (lo_ + hi_) / 2; }

    bool contains(const mpq_class& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const CertifiedReal& other) const {
        return lo_ <= other.lo_ && other.hi_ <= hi_;
    }
    bool overlaps(const CertifiedReal& other) const {
        return lo_ <= other.hi_ && other.lo_ <= hi_;
    }
    bool is_point() const { return lo_ == hi_; }

    // Certain comparisons: true only when the enclosure proves the relation.
    bool certainly_positive() const { return lo_ > 0; }
    bool certainly_negative() const { return hi_ < 0; }
    bool certainly_less(const mpq_class& t) const { return hi_ < t; }
    bool certainly_greater(const mpq_class& t) const { return lo_ > t; }

    CertifiedReal operator+(const CertifiedReal& o) const;
    CertifiedReal operator-(const CertifiedReal& o) const;
    CertifiedReal operator-() const;
    CertifiedReal operator*(const CertifiedReal& o) const;
    // Throws std::domain_error when the divisor encloses zero.
    CertifiedReal operator/(const CertifiedReal& o) const;

    CertifiedReal abs() const;

    // Smallest interval containing both (used to merge independent
    // enclosures of the same quantity).
    static CertifiedReal hull(const CertifiedReal& a, const CertifiedReal& b);
    // Intersection; throws std::domain_error when empty (i.e. when the two
    // enclosures cannot describe the same real number).
    static CertifiedReal meet(const CertifiedReal& a, const CertifiedReal& b);

    // "[lo, hi]" with sig significant digits, endpoints rounded outward.
    std::string to_string(int sig_digits = 12) const;

private:
    mpq_class lo_, hi_;
};

enum class Sign { negative, zero_unprovable, positive };

// A recipe re-evaluates a quantity at a requested working precision and
// returns an enclosure.  All transcendental quantities in this project (the
// logarithms, their ratios, the reduction epsilons) are passed around as
// recipes so that decision procedures can refine them on demand.
using RealRecipe = std::function<CertifiedReal(long bits)>;

// Enclosure of ln(x) for exact rational x > 0.  Width is at most a few ulps
// at the requested precision, and enclosures at higher precision nest inside
// lower-precision ones.  Throws std::domain_error for x <= 0.
CertifiedReal enclose_log(const mpq_class& x, long bits);

// Monotone image of an interval under ln; requires x.lo() > 0.
CertifiedReal enclose_log(const CertifiedReal& x, long bits);

// Decides the sign of the quantity described by `refine`, starting from the
// already-computed enclosure `first`.  Returns positive/negative only when an
// enclosure excludes zero; zero_unprovable when the precision cap is reached
// without a decision (the distinct report for exact zeroes).
Sign certified_sign(const CertifiedReal& first, const RealRecipe& refine,
                    const PrecisionPolicy& policy = {});
Sign certified_sign(const RealRecipe& recipe, const PrecisionPolicy& policy = {});

// Certified floor: the unique n with n <= x < n+1, proven by an enclosure
// that does not straddle an integer.  Throws PrecisionExhausted when the cap
// is reached while straddling (e.g. for values that are exactly integral but
// only known through limits).
mpz_class certified_floor(const CertifiedReal& first, const RealRecipe& refine,
                          const PrecisionPolicy& policy = {});
mpz_class certified_floor(const RealRecipe& recipe, const PrecisionPolicy& policy = {});

// Certified ceiling, same contract as certified_floor.
mpz_class certified_ceil(const RealRecipe& recipe, const PrecisionPolicy& policy = {});

// Enclosure of the distance from x to the nearest integer; always a subset
// of [0, 1/2].
CertifiedReal nearest_integer_distance(const CertifiedReal& x);

// Exact helpers on rationals.
mpz_class floor_rational(const mpq_class& x);
mpz_class ceil_rational(const mpq_class& x);
mpq_class pow10(long k);

// Smallest number with at most two significant decimal digits that is >= x
// (x > 0).  E.g. 9.7614e13 -> 9.8e13, 98000 -> 98000, 98001 -> 99000.
mpq_class round_up_two_significant(const mpq_class& x);

// Smallest multiple of 10^-places that is >= x.
mpq_class round_up_decimal(const mpq_class& x, int places);

// Decimal rendering with directed rounding, exact and deterministic.
// Plain notation for moderate exponents, otherwise normalized scientific.
std::string decimal_lower(const mpq_class& x, int sig_digits);
std::string decimal_upper(const mpq_class& x, int sig_digits);

// Exact parse of integer, fraction ("p/q"), or decimal/scientific literals
// ("12.4", "6.9e30").  Throws std::invalid_argument on malformed input.
mpq_class parse_rational(const std::string& text);

}  // namespace repdiff
