#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <string_view>

#include "qcurve/errors.hpp"
#include "qcurve/jet.hpp"

namespace qcurve {

/// Immutable AST node of the curve expression language.
///
/// Grammar (whitespace insignificant, '^' takes a literal non-negative
/// integer exponent, unary minus binds tighter than binary ops but looser
/// than '^'):
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | atom ('^' uint)?
///   atom   := number | 'pi' | 's' | fn '(' expr ')' | '(' expr ')'
///   fn     := 'sin' | 'cos' | 'sqrt' | 'exp'
struct Expr {
    enum class Kind { Number, Pi, Var, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Sqrt, Exp };

    Kind kind;
    double number = 0.0;   // Kind::Number
    unsigned exponent = 0; // Kind::Pow
    std::shared_ptr<const Expr> lhs;
    std::shared_ptr<const Expr> rhs; // binary ops only
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Parses an expression; throws ParseError with a byte offset on bad input.
ExprPtr parse(std::string_view text);

/// Canonical text form; parse(print(e)) is structurally identical to e.
std::string print(const Expr& e);

bool structurally_equal(const Expr& x, const Expr& y);

namespace detail {

inline double make_like(double c, const double&) { return c; }
inline Jet make_like(double c, const Jet& like) { return Jet::constant(c, like.order()); }

inline double checked_sqrt(double x) {
    if (x <= 0.0) throw SingularEvalError("sqrt of non-positive value");
    return std::sqrt(x);
}
inline Jet checked_sqrt(const Jet& x) { return sqrt(x); }

inline double checked_div(double x, double y) {
    if (y == 0.0) throw SingularEvalError("division by zero");
    return x / y;
}
inline Jet checked_div(const Jet& x, const Jet& y) { return x / y; }

inline double pow_u(double x, unsigned n) {
    double r = 1.0, base = x;
    while (n > 0) {
        if (n & 1u) r *= base;
        base *= base;
        n >>= 1u;
    }
    return r;
}
inline Jet pow_u(const Jet& x, unsigned n) { return pow_uint(x, n); }

}  // namespace detail

/// Evaluates an expression over any scalar algebra providing the operation
/// set (binary64 or Jet); the recursion is identical for both.
template <class Scalar>
Scalar eval(const Expr& e, const Scalar& s) {
    using detail::checked_div;
    using detail::checked_sqrt;
    using detail::make_like;
    using detail::pow_u;
    switch (e.kind) {
        case Expr::Kind::Number: return make_like(e.number, s);
        case Expr::Kind::Pi: return make_like(M_PI, s);
        case Expr::Kind::Var: return s;
        case Expr::Kind::Neg: return -eval(*e.lhs, s);
        case Expr::Kind::Add: return eval(*e.lhs, s) + eval(*e.rhs, s);
        case Expr::Kind::Sub: return eval(*e.lhs, s) - eval(*e.rhs, s);
        case Expr::Kind::Mul: return eval(*e.lhs, s) * eval(*e.rhs, s);
        case Expr::Kind::Div: return checked_div(eval(*e.lhs, s), eval(*e.rhs, s));
        case Expr::Kind::Pow: return pow_u(eval(*e.lhs, s), e.exponent);
        case Expr::Kind::Sin: {
            using std::sin;
            return sin(eval(*e.lhs, s));
        }
        case Expr::Kind::Cos: {
            using std::cos;
            return cos(eval(*e.lhs, s));
        }
        case Expr::Kind::Sqrt: return checked_sqrt(eval(*e.lhs, s));
        case Expr::Kind::Exp: {
            using std::exp;
            return exp(eval(*e.lhs, s));
        }
    }
    throw Error("unreachable expression kind");
}

}  // namespace qcurve
