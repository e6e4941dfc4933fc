#pragma once

#include <cstddef>
#include <vector>

#include "qcurve/errors.hpp"

namespace qcurve {

/// Truncated Taylor series of a scalar function about a point.
///
/// coeffs()[m] stores f^(m)(s0) / m!.  All arithmetic propagates coefficients
/// exactly (to rounding) through the truncation order, so jets double as an
/// exact derivative engine for the curve evaluator.  Operands of binary
/// operations must share one order.
class Jet {
public:
    static constexpr std::size_t kDefaultOrder = 5;

    Jet() : coeffs_(kDefaultOrder + 1, 0.0) {}
    explicit Jet(std::size_t order) : coeffs_(order + 1, 0.0) {}

    /// Jet of the constant function c.
    static Jet constant(double c, std::size_t order = kDefaultOrder);

    /// Seed jet of the identity function at s0: (s0, 1, 0, ...).
    static Jet variable(double s0, std::size_t order = kDefaultOrder);

    std::size_t order() const { return coeffs_.size() - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double operator[](std::size_t m) const { return coeffs_[m]; }
    double& operator[](std::size_t m) { return coeffs_[m]; }

    /// f(s0).
    double value() const { return coeffs_[0]; }

    /// f^(m)(s0) = m! * c_m.
    double derivative(std::size_t m) const;

    /// (f(s0), f'(s0), ..., f^(upto)(s0)); throws OrderError past the order.
    std::vector<double> derivatives(std::size_t upto) const;

    /// Jet of f' at the same point and order; the top coefficient is only a
    /// placeholder (zero), so n applications leave order() - n trusted terms.
    Jet derived() const;

    /// Jet truncated (or zero-extended) to the given order.
    Jet truncated(std::size_t order) const;

    Jet operator-() const;
    Jet operator+(const Jet& y) const;
    Jet operator-(const Jet& y) const;
    Jet operator*(const Jet& y) const;
    Jet operator/(const Jet& y) const;

    Jet operator+(double c) const;
    Jet operator-(double c) const;
    Jet operator*(double c) const;
    Jet operator/(double c) const;

private:
    void check_same_order(const Jet& y) const;
    std::vector<double> coeffs_;
};

Jet operator+(double c, const Jet& x);
Jet operator-(double c, const Jet& x);
Jet operator*(double c, const Jet& x);
Jet operator/(double c, const Jet& x);

Jet sin(const Jet& x);
Jet cos(const Jet& x);
/// sin and cos share their recurrences; computing both costs one pass.
std::pair<Jet, Jet> sincos(const Jet& x);
Jet sqrt(const Jet& x);
Jet exp(const Jet& x);
/// x^n for a literal non-negative integer exponent.
Jet pow_uint(const Jet& x, unsigned n);

/// Substitutes inner into outer: outer expands f about x0, inner expands g
/// about t0 with g(t0) = x0; result expands f(g(.)) about t0.
Jet compose(const Jet& outer, const Jet& inner);

/// Series of the functional inverse of f about y0 = f(s0); the returned
/// jet's constant term is the supplied center s0.  Requires f'(s0) != 0.
Jet invert_series(const Jet& f, double center);

}  // namespace qcurve
