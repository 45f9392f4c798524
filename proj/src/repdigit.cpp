#include "repdiff/repdigit.hpp"

#include <stdexcept>
#include <string>

namespace repdiff {

mpz_class repdigit_value(int digit, long length) {
    if (digit < 1 || digit > 9) throw std::invalid_argument("repdigit_value: digit must be in 1..9");
    if (length < 1) throw std::invalid_argument("repdigit_value: length must be >= 1");
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(length));
    return digit * (power - 1) / 9;
}

std::optional<Repdigit> classify_repdigit(const mpz_class& n) {
    if (n < 1) return std::nullopt;
    std::string digits = n.get_str();
    for (char c : digits)
        if (c != digits[0]) return std::nullopt;
    return Repdigit{digits[0] - '0', static_cast<long>(digits.size()), n};
}

std::vector<SearchSolution> exhaustive_search(const SequenceSpec& spec, long n_max, int k_min) {
    if (n_max < 1) throw std::invalid_argument("exhaustive_search: n_max must be >= 1");
    if (k_min != 1 && k_min != 2) throw std::invalid_argument("exhaustive_search: k_min must be 1 or 2");

    std::vector<mpz_class> terms = terms_up_to(spec, n_max);
    std::vector<SearchSolution> solutions;
    // Classifying the difference instead of enumerating (d, k) lets the
    // difference's digit count bound k automatically.
    for (long n = 1; n <= n_max; ++n) {
        for (long m = 0; m < n; ++m) {
            std::optional<Repdigit> rd = classify_repdigit(terms[n] - terms[m]);
            if (rd && rd->length >= k_min)
                solutions.push_back({n, m, rd->digit, rd->length});
        }
    }
    return solutions;
}

}  // namespace repdiff
