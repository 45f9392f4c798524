#pragma once

// Logarithmic (Weil) heights of rationals and real quadratic numbers.
//
// Two routes are provided.  height_exact evaluates the definition through the
// minimal polynomial: for x = (a + b*sqrt(D))/c with b != 0 the integer
// minimal polynomial is c^2 X^2 - 2ac X + (a^2 - D b^2) divided by its
// content, and h(x) = (log a0 + max(0, log|x|) + max(0, log|conj(x)|)) / 2.
// height_estimate recurses over an expression tree with the standard
// triangle-inequality properties
//     h(x +- y) <= h(x) + h(y) + log 2
//     h(x * y), h(x / y) <= h(x) + h(y)
//     h(x^k) = |k| h(x)
// and therefore always dominates the exact height of the evaluated
// expression.  Bound chains that must match previously published constants
// use the estimate route.

#include <array>
#include <memory>
#include <vector>

#include "repdiff/certified_real.hpp"
#include "repdiff/quadratic.hpp"

namespace repdiff {

enum class HeightKind { exact, estimate };

struct HeightValue {
    CertifiedReal value;  // nats, >= 0
    HeightKind kind;
};

// Integer minimal polynomial, content-free, positive leading coefficient.
// Degree 1 for rationals (returned as {den, -num}), degree 2 otherwise.
std::vector<mpz_class> minimal_polynomial(const QuadraticNumber& x);

HeightValue height_exact(const mpq_class& x, long bits);
HeightValue height_exact(const QuadraticNumber& x, long bits);

// Expression tree for height estimation.  Nodes own their children; trees
// are cheap and copied by value.
class HeightExpr {
public:
    static HeightExpr leaf(QuadraticNumber value);
    static HeightExpr leaf(const mpq_class& value);
    static HeightExpr sum(HeightExpr a, HeightExpr b);
    static HeightExpr difference(HeightExpr a, HeightExpr b);
    static HeightExpr product(HeightExpr a, HeightExpr b);
    static HeightExpr quotient(HeightExpr a, HeightExpr b);
    static HeightExpr power(HeightExpr base, long exponent);

    // Triangle-inequality upper bound on the height of the evaluated tree.
    HeightValue estimate(long bits) const;
    // Exact value of the tree in the quadratic field.
    QuadraticNumber evaluate() const;

private:
    enum class Op { leaf, add, sub, mul, div, pow };
    HeightExpr() = default;

    Op op_ = Op::leaf;
    QuadraticNumber value_;
    long exponent_ = 0;
    std::shared_ptr<const HeightExpr> left_, right_;
};

}  // namespace repdiff
