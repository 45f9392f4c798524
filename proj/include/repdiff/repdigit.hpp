#pragma once

// Repdigit construction and recognition, plus the exhaustive small-range
// search for U_n - U_m = d*(10^k - 1)/9 witnesses.

#include <compare>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "repdiff/sequence.hpp"

namespace repdiff {

struct Repdigit {
    int digit;    // 1..9
    long length;  // k >= 1
    mpz_class value;

    // Single-digit repdigits are the conventionally trivial ones.
    bool trivial() const { return length == 1; }
};

// d * (10^k - 1) / 9, validated.
mpz_class repdigit_value(int digit, long length);

// Inverse of repdigit_value: present iff all decimal digits of n are equal
// (n >= 1); round-trips with repdigit_value.
std::optional<Repdigit> classify_repdigit(const mpz_class& n);

struct SearchSolution {
    long n, m;
    int digit;
    long length;

    auto operator<=>(const SearchSolution&) const = default;
};

// All (n, m, d, k) with 0 <= m < n <= n_max, k >= k_min and
// term(spec, n) - term(spec, m) = repdigit_value(d, k),
// ordered lexicographically by (n, m).  k_min must be 1 or 2.
std::vector<SearchSolution> exhaustive_search(const SequenceSpec& spec, long n_max, int k_min);

}  // namespace repdiff
