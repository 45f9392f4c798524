#include <doctest.h>

#include "repdiff/sequence.hpp"

using namespace repdiff;

TEST_SUITE("sequence") {

TEST_CASE("balancing and companion terms") {
    const SequenceSpec& b = SequenceSpec::balancing();
    const SequenceSpec& c = SequenceSpec::lucas_balancing();
    const long expect_b[] = {0, 1, 6, 35, 204, 1189, 6930};
    const long expect_c[] = {1, 3, 17, 99, 577, 3363, 19601};
    for (long n = 0; n <= 6; ++n) {
        CHECK(term(b, n) == expect_b[n]);
        CHECK(term(c, n) == expect_c[n]);
    }
    CHECK(term(b, 1) == 1);
    CHECK(term(b, 3) == 35);
    CHECK(term(b, 4) == 204);  // 6*35 - 6
    CHECK(term(c, 2) == 17);   // 6*3 - 1
    CHECK_THROWS_AS(term(b, -1), std::invalid_argument);
}

TEST_CASE("terms_up_to matches term") {
    const SequenceSpec& b = SequenceSpec::balancing();
    std::vector<mpz_class> all = terms_up_to(b, 60);
    REQUIRE(all.size() == 61);
    for (long n = 0; n <= 60; n += 7) CHECK(all[n] == term(b, n));
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(SequenceSpec(2, 1, 0, 1, "repeated-root"), std::invalid_argument);
    CHECK_THROWS_AS(SequenceSpec(1, 1, 0, 1, "small-p"), std::invalid_argument);
    CHECK_THROWS_AS(SequenceSpec(6, 6, 0, 1, "big-q"), std::invalid_argument);
    CHECK_THROWS_AS(SequenceSpec(6, 1, 1, 1, "flat-start"), std::invalid_argument);
    CHECK_THROWS_AS(SequenceSpec(6, 1, -1, 1, "negative-start"), std::invalid_argument);
    CHECK_NOTHROW(SequenceSpec(3, 2, 0, 1, "mersenne"));
    CHECK_NOTHROW(SequenceSpec(2, -1, 0, 1, "pell"));
}

TEST_CASE("root data") {
    const SequenceSpec& b = SequenceSpec::balancing();
    CHECK(b.radicand() == 2);
    CHECK(b.radical_multiplier() == 4);  // discriminant 32 = 4^2 * 2
    QuadraticNumber alpha = b.alpha();
    QuadraticNumber beta = b.beta();
    CHECK(alpha == QuadraticNumber(mpz_class(3), mpz_class(2), mpz_class(1)));
    CHECK(alpha * beta == QuadraticNumber(mpz_class(1)));           // product = coeff_q
    CHECK(alpha + beta == QuadraticNumber(mpz_class(6)));           // sum = coeff_p
}

TEST_CASE("closed form equals the recurrence for both sequences to n=200") {
    const SequenceSpec& b = SequenceSpec::balancing();
    const SequenceSpec& c = SequenceSpec::lucas_balancing();
    std::vector<mpz_class> tb = terms_up_to(b, 200);
    std::vector<mpz_class> tc = terms_up_to(c, 200);
    for (long n = 0; n <= 200; ++n) {
        CHECK(binet_term(b, n) == tb[n]);
        CHECK(binet_term(c, n) == tc[n]);
    }
    CHECK(binet_term(b, 0) == 0);
    CHECK(binet_term(b, 3) == 35);
    CHECK(binet_term(c, 4) == 577);  // 6*99 - 17
}

TEST_CASE("closed form works for other recurrences") {
    SequenceSpec pell(2, -1, 0, 1, "pell");  // U_{n+1} = 2U_n + U_{n-1}
    const long expect[] = {0, 1, 2, 5, 12, 29, 70};
    for (long n = 0; n <= 6; ++n) {
        CHECK(term(pell, n) == expect[n]);
        CHECK(binet_term(pell, n) == expect[n]);
    }
    CHECK(pell.radicand() == 2);
    CHECK(pell.radical_multiplier() == 2);  // discriminant 8

    SequenceSpec wide(7, 2, 0, 1, "wide");  // discriminant 41, prime radicand
    for (long n = 0; n <= 40; ++n) CHECK(binet_term(wide, n) == term(wide, n));

    // Square discriminant: rational roots 2 and 1, terms 2^n - 1.
    SequenceSpec mersenne(3, 2, 0, 1, "mersenne");
    CHECK(mersenne.radical_multiplier() == 0);
    CHECK(mersenne.alpha() == QuadraticNumber(mpq_class(2)));
    for (long n = 0; n <= 30; ++n) CHECK(binet_term(mersenne, n) == term(mersenne, n));
    CHECK(term(mersenne, 5) == 31);
}

TEST_CASE("growth envelopes hold for the built-in sequences") {
    CHECK(check_growth_envelope(SequenceSpec::balancing(), 50));
    CHECK(check_growth_envelope(SequenceSpec::balancing(), 200));
    CHECK(check_growth_envelope(SequenceSpec::lucas_balancing(), 1));  // alpha < 6 < alpha^2
    CHECK(check_growth_envelope(SequenceSpec::lucas_balancing(), 200));
}

TEST_CASE("growth envelope rejects unsupported shapes") {
    SequenceSpec other(3, 1, 0, 2, "other");
    CHECK_THROWS_AS(check_growth_envelope(other, 10), std::invalid_argument);
    CHECK_THROWS_AS(check_growth_envelope(SequenceSpec::balancing(), 0), std::invalid_argument);
}

TEST_CASE("index identity catches off-by-one errors") {
    // For coeff_q = 1: U_{n+1} U_{n-1} = U_n^2 - 1 on the balancing sequence.
    std::vector<mpz_class> tb = terms_up_to(SequenceSpec::balancing(), 101);
    for (long n = 1; n <= 100; ++n) CHECK(tb[n + 1] * tb[n - 1] == tb[n] * tb[n] - 1);
}

TEST_CASE("terms increase strictly") {
    std::vector<mpz_class> tb = terms_up_to(SequenceSpec::balancing(), 80);
    std::vector<mpz_class> tc = terms_up_to(SequenceSpec::lucas_balancing(), 80);
    for (long n = 1; n < 80; ++n) {
        CHECK(tb[n + 1] > tb[n]);
        CHECK(tc[n + 1] > tc[n]);
    }
}

}  // TEST_SUITE
