#include <doctest.h>

#include "oracles.hpp"
#include "repdiff/heights.hpp"

using namespace repdiff;

namespace {

const QuadraticNumber kAlpha(mpz_class(3), mpz_class(2), mpz_class(1));

HeightExpr random_tree(oracles::RationalSource& source, int depth) {
    if (depth == 0) {
        if (source.next_int(0, 1) == 0) {
            mpq_class r(source.next_int(-9, 9), source.next_int(1, 9));
            r.canonicalize();
            return HeightExpr::leaf(r);
        }
        return HeightExpr::leaf(QuadraticNumber(mpz_class(source.next_int(-5, 5)),
                                                mpz_class(source.next_int(-5, 5)),
                                                mpz_class(source.next_int(1, 5))));
    }
    HeightExpr left = random_tree(source, depth - 1);
    switch (source.next_int(0, 4)) {
        case 0: return HeightExpr::sum(std::move(left), random_tree(source, depth - 1));
        case 1: return HeightExpr::difference(std::move(left), random_tree(source, depth - 1));
        case 2: return HeightExpr::product(std::move(left), random_tree(source, depth - 1));
        case 3: {
            HeightExpr right = random_tree(source, depth - 1);
            if (right.evaluate().is_zero()) return left;
            return HeightExpr::quotient(std::move(left), std::move(right));
        }
        default: {
            long k = source.next_int(-3, 3);
            if (k < 0 && left.evaluate().is_zero()) k = -k;
            return HeightExpr::power(std::move(left), k);
        }
    }
}

}  // namespace

TEST_SUITE("heights") {

TEST_CASE("minimal polynomials") {
    CHECK(minimal_polynomial(kAlpha) == std::vector<mpz_class>{1, -6, 1});
    CHECK(minimal_polynomial(QuadraticNumber(mpz_class(0), mpz_class(4), mpz_class(1))) ==
          std::vector<mpz_class>{1, 0, -32});
    CHECK(minimal_polynomial(QuadraticNumber(mpz_class(1), mpz_class(1), mpz_class(3))) ==
          std::vector<mpz_class>{9, -6, -1});
    CHECK(minimal_polynomial(QuadraticNumber(mpq_class(22, 7))) == std::vector<mpz_class>{7, -22});
}

TEST_CASE("height of rationals is log of the larger side") {
    CHECK(height_exact(mpq_class(10), 96).value.overlaps(enclose_log(mpq_class(10), 96)));
    CHECK(height_exact(mpq_class(3, 7), 96).value.overlaps(enclose_log(mpq_class(7), 96)));
    CHECK(height_exact(mpq_class(-22, 7), 96).value.overlaps(enclose_log(mpq_class(22), 96)));
    CHECK(height_exact(mpq_class(1), 96).value.width() == 0);
    CHECK(height_exact(mpq_class(1), 96).value.contains(mpq_class(0)));
    CHECK(height_exact(mpq_class(0), 96).value.hi() == 0);
    CHECK(height_exact(mpq_class(10), 96).kind == HeightKind::exact);
}

TEST_CASE("height of the dominant root is half its log") {
    CertifiedReal h = height_exact(kAlpha, 96).value;
    CertifiedReal half_log = enclose_log(kAlpha, 96) * CertifiedReal(mpq_class(1, 2));
    CHECK(h.overlaps(half_log));
}

TEST_CASE("height is invariant under inversion") {
    for (const QuadraticNumber& x :
         {kAlpha, QuadraticNumber(mpq_class(10)),
          QuadraticNumber(mpz_class(0), mpz_class(4), mpz_class(9)),
          QuadraticNumber(mpz_class(5), mpz_class(-3), mpz_class(7))}) {
        CertifiedReal h = height_exact(x, 128).value;
        CertifiedReal h_inv = height_exact(x.inverse(), 128).value;
        CHECK(h.overlaps(h_inv));
    }
}

TEST_CASE("height power identity") {
    for (const QuadraticNumber& x : {kAlpha, QuadraticNumber(mpq_class(10))}) {
        CertifiedReal h = height_exact(x, 128).value;
        for (long k = -3; k <= 3; ++k) {
            if (k == 0) continue;
            CertifiedReal h_pow = height_exact(x.pow(k), 128).value;
            CertifiedReal scaled = h * CertifiedReal(mpq_class(k < 0 ? -k : k));
            CHECK(h_pow.overlaps(scaled));
        }
    }
}

TEST_CASE("stage-1 coefficient estimates match the published ceilings") {
    // 4*9*sqrt2 over 9, kept unreduced: h(36*sqrt2) + h(9) < 6.2.
    HeightExpr balancing = HeightExpr::quotient(
        HeightExpr::leaf(QuadraticNumber(mpz_class(0), mpz_class(36), mpz_class(1))),
        HeightExpr::leaf(mpq_class(9)));
    CertifiedReal est_b = balancing.estimate(128).value;
    CHECK(est_b.certainly_less(mpq_class(62, 10)));
    CHECK(est_b.certainly_greater(mpq_class(61, 10)));
    CHECK(balancing.estimate(128).kind == HeightKind::estimate);

    // 2*9 over 9: h(18) + h(9) < 5.1.
    HeightExpr lucas = HeightExpr::quotient(HeightExpr::leaf(mpq_class(18)),
                                            HeightExpr::leaf(mpq_class(9)));
    CertifiedReal est_l = lucas.estimate(128).value;
    CHECK(est_l.certainly_less(mpq_class(51, 10)));
    CHECK(est_l.certainly_greater(mpq_class(50, 10)));
}

TEST_CASE("power with unit exponent is the exact height") {
    mpq_class gamma(7, 5);
    HeightExpr tree = HeightExpr::power(HeightExpr::leaf(gamma), 1);
    CertifiedReal est = tree.estimate(96).value;
    CertifiedReal exact = height_exact(gamma, 96).value;
    CHECK(est.lo() == exact.lo());
    CHECK(est.hi() == exact.hi());
}

TEST_CASE("estimate dominates the exact height of the evaluated tree") {
    oracles::RationalSource source(8675309);
    int checked = 0;
    while (checked < 100) {
        HeightExpr tree = random_tree(source, 3);
        QuadraticNumber value = tree.evaluate();
        CertifiedReal est = tree.estimate(128).value;
        CertifiedReal exact = height_exact(value, 128).value;
        // est >= exact as real numbers; enclosures may only graze.
        CHECK(est.hi() >= exact.lo());
        ++checked;
    }
}

TEST_CASE("evaluate matches direct field arithmetic") {
    QuadraticNumber four_sqrt2(mpz_class(0), mpz_class(4), mpz_class(1));
    HeightExpr tree = HeightExpr::quotient(
        HeightExpr::product(HeightExpr::leaf(four_sqrt2), HeightExpr::leaf(mpq_class(9))),
        HeightExpr::leaf(mpq_class(9)));
    CHECK(tree.evaluate() == four_sqrt2);
}

}  // TEST_SUITE
