#include "altbase/field_elem.hpp"

#include <cctype>
#include <sstream>

namespace altbase {

namespace {

Int gcd3(const Int& a, const Int& b, const Int& c) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

// floor(b * sqrt(d)) for b != 0, d >= 2 non-square. b*sqrt(d) is
// irrational, so the bracketing below is strict on both sides.
Int floor_b_sqrt_d(const Int& b, const Int& d) {
    Int t = b * b * d;
    Int r;
    mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());  // r <= |b|sqrt(d) < r+1
    if (b > 0) return r;
    return -r - 1;
}

// Sign of u + v*sqrt(d), d >= 2 non-square.
int sign_u_v_sqrt(const Int& u, const Int& v, const Int& d) {
    int su = sgn(u), sv = sgn(v);
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    // Mixed signs: compare u^2 against v^2*d.
    Int u2 = u * u, v2d = v * v * d;
    int c = cmp(u2, v2d);
    if (c == 0) return 0;  // impossible for non-square d, kept for safety
    // |u| > |v|sqrt(d) ? sign of u : sign of v.
    return c > 0 ? su : sv;
}

}  // namespace

FieldElem::FieldElem(long num, long den) {
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    v_ = q;
}

FieldElem FieldElem::make_quad_nocheck(Int a, Int b, Int c, const Int& d) {
    if (sgn(c) == 0) throw Error(ErrorCode::DivisionByZero, "quadratic with zero denominator");
    if (sgn(c) < 0) {
        a = -a;
        b = -b;
        c = -c;
    }
    if (sgn(b) == 0) {
        Rational q(a, c);
        q.canonicalize();
        FieldElem e;
        e.v_ = q;
        return e;
    }
    Int g = gcd3(abs(a), abs(b), c);
    FieldElem e;
    e.v_ = QuadIrr{a / g, b / g, c / g, d};
    return e;
}

FieldElem FieldElem::quadratic(Int a, Int b, Int c, Int d, unsigned long squarefree_bound) {
    if (sgn(d) <= 0) throw Error(ErrorCode::BadDiscriminant, "discriminant must be positive");
    // Pull square factors into b, then certify d squarefree.
    for (Int f = 2; f * f <= d; ++f) {
        if (f > squarefree_bound) break;
        Int f2 = f * f;
        while (d % f2 == 0) {
            d /= f2;
            b *= f;
        }
    }
    if (d == 1) return make_quad_nocheck(a + b, Int(0), c, Int(1));
    Int bound_sq = Int(squarefree_bound) * Int(squarefree_bound);
    if (d > bound_sq)
        throw Error(ErrorCode::BadDiscriminant,
                    "cannot certify discriminant squarefree within trial-division bound");
    return make_quad_nocheck(std::move(a), std::move(b), std::move(c), d);
}

bool FieldElem::is_integer() const {
    return is_rational() && rat().get_den() == 1;
}

int FieldElem::sign() const {
    if (is_rational()) return sgn(rat());
    const QuadIrr& q = quad();
    return sign_u_v_sqrt(q.a, q.b, q.d);  // c > 0
}

Int FieldElem::floor() const {
    if (is_rational()) {
        Int f;
        mpz_fdiv_q(f.get_mpz_t(), rat().get_num().get_mpz_t(), rat().get_den().get_mpz_t());
        return f;
    }
    const QuadIrr& q = quad();
    // The value is irrational, so floor((a + floor(b sqrt(d)))/c) is exact.
    Int n = q.a + floor_b_sqrt_d(q.b, q.d);
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), n.get_mpz_t(), q.c.get_mpz_t());
    return f;
}

namespace {

// Common arithmetic path: both operands viewed in Q(sqrt(d)).
struct QView {
    Int a, b, c;
};

QView view(const FieldElem& x, const Int& d) {
    if (x.is_rational()) return {x.rat().get_num(), Int(0), x.rat().get_den()};
    if (x.quad().d != d)
        throw Error(ErrorCode::MixedDiscriminants, "operands lie in distinct quadratic fields");
    return {x.quad().a, x.quad().b, x.quad().c};
}

const Int* common_d(const FieldElem& x, const FieldElem& y) {
    const Int* d = nullptr;
    if (!x.is_rational()) d = &x.quad().d;
    if (!y.is_rational()) {
        if (d && *d != y.quad().d)
            throw Error(ErrorCode::MixedDiscriminants, "operands lie in distinct quadratic fields");
        d = &y.quad().d;
    }
    return d;
}

}  // namespace

FieldElem operator+(const FieldElem& x, const FieldElem& y) {
    const Int* d = common_d(x, y);
    if (!d) return FieldElem(Rational(x.rat() + y.rat()));
    QView u = view(x, *d), v = view(y, *d);
    return FieldElem::quadratic(u.a * v.c + v.a * u.c, u.b * v.c + v.b * u.c, u.c * v.c, *d);
}

FieldElem operator-(const FieldElem& x, const FieldElem& y) { return x + (-y); }

FieldElem FieldElem::operator-() const {
    if (is_rational()) return FieldElem(Rational(-rat()));
    const QuadIrr& q = quad();
    return make_quad_nocheck(-q.a, -q.b, q.c, q.d);
}

FieldElem operator*(const FieldElem& x, const FieldElem& y) {
    const Int* d = common_d(x, y);
    if (!d) return FieldElem(Rational(x.rat() * y.rat()));
    QView u = view(x, *d), v = view(y, *d);
    return FieldElem::quadratic(u.a * v.a + u.b * v.b * (*d), u.a * v.b + u.b * v.a, u.c * v.c, *d);
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (is_rational()) return FieldElem(Rational(1 / rat()));
    const QuadIrr& q = quad();
    // 1/((a+b sqrt d)/c) = c(a - b sqrt d)/(a^2 - b^2 d)
    Int norm = q.a * q.a - q.b * q.b * q.d;  // nonzero: sqrt(d) irrational
    return quadratic(q.c * q.a, -q.c * q.b, norm, q.d);
}

FieldElem operator/(const FieldElem& x, const FieldElem& y) { return x * y.inverse(); }

FieldElem FieldElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElem acc(1);
    FieldElem base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

int cmp(const FieldElem& x, const FieldElem& y) {
    const Int* d = common_d(x, y);
    if (!d) return cmp(x.rat(), y.rat());
    QView u = view(x, *d), v = view(y, *d);
    // sign of (a1 c2 - a2 c1) + (b1 c2 - b2 c1) sqrt(d), both c > 0.
    return sign_u_v_sqrt(u.a * v.c - v.a * u.c, u.b * v.c - v.b * u.c, *d);
}

double FieldElem::to_double() const {
    if (is_rational()) return rat().get_d();
    const QuadIrr& q = quad();
    mpf_class a(q.a, 128), b(q.b, 128), c(q.c, 128), d(q.d, 128), s(0, 128);
    mpf_sqrt(s.get_mpf_t(), d.get_mpf_t());
    mpf_class r = (a + b * s) / c;
    return r.get_d();
}

std::string FieldElem::str() const {
    std::ostringstream os;
    if (is_rational()) {
        os << rat().get_num();
        if (rat().get_den() != 1) os << "/" << rat().get_den();
        return os.str();
    }
    const QuadIrr& q = quad();
    os << "(" << q.a << (sgn(q.b) < 0 ? "-" : "+") << abs(q.b) << "*sqrt(" << q.d << "))/" << q.c;
    return os.str();
}

namespace {

struct Cursor {
    std::string_view s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool eat(std::string_view word) {
        skip_ws();
        if (s.substr(i, word.size()) == word) {
            i += word.size();
            return true;
        }
        return false;
    }
    Int integer() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        size_t digits = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
        if (digits == 0) throw Error(ErrorCode::ParseError, "expected integer in '" + std::string(s) + "'");
        return Int(std::string(s.substr(start, i - start)));
    }
    bool done() {
        skip_ws();
        return i == s.size();
    }
};

}  // namespace

FieldElem FieldElem::parse(std::string_view text) {
    Cursor c{text};
    c.skip_ws();
    if (c.i < text.size() && text[c.i] == '(') {
        // (a+b*sqrt(d))/c  or  (a-b*sqrt(d))/c
        c.eat('(');
        Int a = c.integer();
        int bsign = 1;
        if (c.eat('-'))
            bsign = -1;
        else if (!c.eat('+'))
            throw Error(ErrorCode::ParseError, "expected '+' or '-' in quadratic literal");
        Int b = c.integer();
        if (!c.eat("*sqrt(")) throw Error(ErrorCode::ParseError, "expected '*sqrt(' in quadratic literal");
        Int d = c.integer();
        if (!c.eat(')') || !c.eat(')') || !c.eat('/'))
            throw Error(ErrorCode::ParseError, "malformed quadratic literal");
        Int den = c.integer();
        if (!c.done()) throw Error(ErrorCode::ParseError, "trailing characters in field element");
        return quadratic(a, bsign * b, den, d);
    }
    Int num = c.integer();
    if (c.eat('/')) {
        Int den = c.integer();
        if (!c.done()) throw Error(ErrorCode::ParseError, "trailing characters in field element");
        if (sgn(den) == 0) throw Error(ErrorCode::ParseError, "zero denominator");
        Rational q(num, den);
        q.canonicalize();
        return FieldElem(q);
    }
    if (!c.done()) throw Error(ErrorCode::ParseError, "trailing characters in field element");
    return FieldElem(Rational(num));
}

bool identical(const FieldElem& x, const FieldElem& y) {
    if (x.is_rational() != y.is_rational()) return false;
    if (x.is_rational()) return x.rat() == y.rat();
    const QuadIrr& a = x.quad();
    const QuadIrr& b = y.quad();
    return a.a == b.a && a.b == b.b && a.c == b.c && a.d == b.d;
}

std::optional<std::pair<Int, Int>> hw_condition(const FieldElem& beta) {
    if (beta <= FieldElem(1)) return std::nullopt;
    if (beta.is_rational()) {
        // A rational root of the monic x^2 - p x - q is an integer, and
        // for an integer N > 1, q = N(N - p) >= 1 forces p < N while
        // p >= q = N(N - p) forces p >= N. No solutions either way.
        return std::nullopt;
    }
    const QuadIrr& qv = beta.quad();
    // Minimal polynomial of (a + b sqrt d)/c: x^2 - (2a/c) x + (a^2 - b^2 d)/c^2.
    Int two_a = 2 * qv.a;
    if (two_a % qv.c != 0) return std::nullopt;
    Int p = two_a / qv.c;
    Int num = qv.b * qv.b * qv.d - qv.a * qv.a;
    Int c2 = qv.c * qv.c;
    if (num % c2 != 0) return std::nullopt;
    Int q = num / c2;
    if (!(p >= q && q >= 1)) return std::nullopt;
    // Re-substitute to guard against any canonicalization slip.
    FieldElem check = beta * beta - (FieldElem(p) * beta + FieldElem(q));
    if (!check.is_zero()) throw Error(ErrorCode::Internal, "hw_condition re-substitution failed");
    return std::make_pair(p, q);
}

}  // namespace altbase
