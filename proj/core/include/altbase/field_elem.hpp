#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "altbase/errors.hpp"

namespace altbase {

using Int = mpz_class;
using Rational = mpq_class;  // GMP keeps these canonical: den > 0, gcd = 1

// A real quadratic irrational (a + b*sqrt(d))/c with b != 0, c > 0,
// gcd(a, b, c) = 1 and d >= 2 squarefree. Equality of values is
// componentwise equality of the canonical form.
struct QuadIrr {
    Int a, b, c, d;
};

// Exact element of Q or of a real quadratic field Q(sqrt(d)).
// Immutable after construction; all operations are pure and return
// canonical values (a quadratic with b == 0 collapses to a rational).
class FieldElem {
public:
    FieldElem() : v_(Rational(0)) {}
    FieldElem(long n) : v_(Rational(n)) {}
    FieldElem(const Int& n) : v_(Rational(n)) {}
    FieldElem(const Rational& q) : v_(q) { std::get<Rational>(v_).canonicalize(); }
    FieldElem(long num, long den);

    // (a + b*sqrt(d))/c. Factors square parts out of d by trial division
    // up to squarefree_bound and rejects d it cannot certify squarefree.
    static FieldElem quadratic(Int a, Int b, Int c, Int d,
                               unsigned long squarefree_bound = 1000000);

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    bool is_integer() const;
    const Rational& rat() const { return std::get<Rational>(v_); }
    const QuadIrr& quad() const { return std::get<QuadIrr>(v_); }

    int sign() const;
    bool is_zero() const { return sign() == 0; }
    Int floor() const;
    FieldElem inverse() const;
    FieldElem pow(long e) const;
    double to_double() const;

    std::string str() const;
    static FieldElem parse(std::string_view text);

    friend FieldElem operator+(const FieldElem& x, const FieldElem& y);
    friend FieldElem operator-(const FieldElem& x, const FieldElem& y);
    friend FieldElem operator*(const FieldElem& x, const FieldElem& y);
    friend FieldElem operator/(const FieldElem& x, const FieldElem& y);
    FieldElem operator-() const;

    // Exact total order consistent with the real values; throws
    // MixedDiscriminants for quadratics over distinct fields.
    friend int cmp(const FieldElem& x, const FieldElem& y);

    friend bool operator==(const FieldElem& x, const FieldElem& y) { return cmp(x, y) == 0; }
    friend bool operator!=(const FieldElem& x, const FieldElem& y) { return cmp(x, y) != 0; }
    friend bool operator<(const FieldElem& x, const FieldElem& y) { return cmp(x, y) < 0; }
    friend bool operator<=(const FieldElem& x, const FieldElem& y) { return cmp(x, y) <= 0; }
    friend bool operator>(const FieldElem& x, const FieldElem& y) { return cmp(x, y) > 0; }
    friend bool operator>=(const FieldElem& x, const FieldElem& y) { return cmp(x, y) >= 0; }

private:
    static FieldElem make_quad_nocheck(Int a, Int b, Int c, const Int& d);
    std::variant<Rational, QuadIrr> v_;
};

// True iff x and y are the same real number. Unlike cmp, never throws:
// canonical values in distinct quadratic fields are simply unequal.
bool identical(const FieldElem& x, const FieldElem& y);

// If beta satisfies beta^2 = p*beta + q with integers p >= q >= 1,
// returns (p, q); otherwise empty. Decided exactly from the canonical
// form (the rational root theorem rules out non-integer rationals, and
// no integer > 1 admits such a pair).
std::optional<std::pair<Int, Int>> hw_condition(const FieldElem& beta);

}  // namespace altbase
