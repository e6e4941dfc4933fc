#include "qcurve/jet.hpp"

#include <cmath>
#include <utility>

namespace qcurve {

Jet Jet::constant(double c, std::size_t order) {
    Jet j(order);
    j.coeffs_[0] = c;
    return j;
}

Jet Jet::variable(double s0, std::size_t order) {
    Jet j(order);
    j.coeffs_[0] = s0;
    if (order >= 1) j.coeffs_[1] = 1.0;
    return j;
}

double Jet::derivative(std::size_t m) const {
    if (m > order()) throw OrderError("derivative order exceeds jet order");
    double f = 1.0;
    for (std::size_t i = 2; i <= m; ++i) f *= static_cast<double>(i);
    return coeffs_[m] * f;
}

std::vector<double> Jet::derivatives(std::size_t upto) const {
    if (upto > order()) throw OrderError("requested derivative order exceeds jet order");
    std::vector<double> out(upto + 1);
    double f = 1.0;
    for (std::size_t m = 0; m <= upto; ++m) {
        if (m >= 2) f *= static_cast<double>(m);
        out[m] = coeffs_[m] * f;
    }
    return out;
}

Jet Jet::derived() const {
    Jet d(order());
    for (std::size_t m = 0; m + 1 <= order(); ++m)
        d.coeffs_[m] = coeffs_[m + 1] * static_cast<double>(m + 1);
    return d;
}

Jet Jet::truncated(std::size_t order) const {
    Jet t(order);
    const std::size_t n = std::min(order, this->order());
    for (std::size_t m = 0; m <= n; ++m) t.coeffs_[m] = coeffs_[m];
    return t;
}

void Jet::check_same_order(const Jet& y) const {
    if (order() != y.order()) throw OrderError("jet order mismatch");
}

Jet Jet::operator-() const {
    Jet r(order());
    for (std::size_t m = 0; m <= order(); ++m) r.coeffs_[m] = -coeffs_[m];
    return r;
}

Jet Jet::operator+(const Jet& y) const {
    check_same_order(y);
    Jet r(order());
    for (std::size_t m = 0; m <= order(); ++m) r.coeffs_[m] = coeffs_[m] + y.coeffs_[m];
    return r;
}

Jet Jet::operator-(const Jet& y) const {
    check_same_order(y);
    Jet r(order());
    for (std::size_t m = 0; m <= order(); ++m) r.coeffs_[m] = coeffs_[m] - y.coeffs_[m];
    return r;
}

Jet Jet::operator*(const Jet& y) const {
    check_same_order(y);
    Jet r(order());
    for (std::size_t m = 0; m <= order(); ++m) {
        double s = 0.0;
        for (std::size_t j = 0; j <= m; ++j) s += coeffs_[j] * y.coeffs_[m - j];
        r.coeffs_[m] = s;
    }
    return r;
}

Jet Jet::operator/(const Jet& y) const {
    check_same_order(y);
    if (y.coeffs_[0] == 0.0) throw SingularEvalError("division by a jet with zero constant term");
    Jet r(order());
    for (std::size_t m = 0; m <= order(); ++m) {
        double s = coeffs_[m];
        for (std::size_t j = 0; j < m; ++j) s -= r.coeffs_[j] * y.coeffs_[m - j];
        r.coeffs_[m] = s / y.coeffs_[0];
    }
    return r;
}

Jet Jet::operator+(double c) const {
    Jet r = *this;
    r.coeffs_[0] += c;
    return r;
}

Jet Jet::operator-(double c) const {
    Jet r = *this;
    r.coeffs_[0] -= c;
    return r;
}

Jet Jet::operator*(double c) const {
    Jet r(order());
    for (std::size_t m = 0; m <= order(); ++m) r.coeffs_[m] = coeffs_[m] * c;
    return r;
}

Jet Jet::operator/(double c) const {
    if (c == 0.0) throw SingularEvalError("division by zero constant");
    return *this * (1.0 / c);
}

Jet operator+(double c, const Jet& x) { return x + c; }
Jet operator-(double c, const Jet& x) { return (-x) + c; }
Jet operator*(double c, const Jet& x) { return x * c; }

Jet operator/(double c, const Jet& x) { return Jet::constant(c, x.order()) / x; }

std::pair<Jet, Jet> sincos(const Jet& x) {
    const std::size_t J = x.order();
    Jet s(J), c(J);
    s[0] = std::sin(x[0]);
    c[0] = std::cos(x[0]);
    for (std::size_t m = 1; m <= J; ++m) {
        double as = 0.0, ac = 0.0;
        for (std::size_t j = 1; j <= m; ++j) {
            as += static_cast<double>(j) * x[j] * c[m - j];
            ac += static_cast<double>(j) * x[j] * s[m - j];
        }
        s[m] = as / static_cast<double>(m);
        c[m] = -ac / static_cast<double>(m);
    }
    return {s, c};
}

Jet sin(const Jet& x) { return sincos(x).first; }
Jet cos(const Jet& x) { return sincos(x).second; }

Jet sqrt(const Jet& x) {
    if (x[0] <= 0.0) throw SingularEvalError("sqrt of a jet with non-positive constant term");
    const std::size_t J = x.order();
    Jet r(J);
    r[0] = std::sqrt(x[0]);
    for (std::size_t m = 1; m <= J; ++m) {
        double s = x[m];
        for (std::size_t j = 1; j < m; ++j) s -= r[j] * r[m - j];
        r[m] = s / (2.0 * r[0]);
    }
    return r;
}

Jet exp(const Jet& x) {
    const std::size_t J = x.order();
    Jet r(J);
    r[0] = std::exp(x[0]);
    for (std::size_t m = 1; m <= J; ++m) {
        double s = 0.0;
        for (std::size_t j = 1; j <= m; ++j) s += static_cast<double>(j) * x[j] * r[m - j];
        r[m] = s / static_cast<double>(m);
    }
    return r;
}

Jet pow_uint(const Jet& x, unsigned n) {
    Jet r = Jet::constant(1.0, x.order());
    Jet base = x;
    while (n > 0) {
        if (n & 1u) r = r * base;
        base = base * base;
        n >>= 1u;
    }
    return r;
}

Jet compose(const Jet& outer, const Jet& inner) {
    const std::size_t J = inner.order();
    Jet shifted = inner;
    shifted[0] = 0.0;
    // Horner evaluation of the outer polynomial in (inner - inner(0)).
    const std::size_t n = outer.order();
    Jet r = Jet::constant(outer[n], J);
    for (std::size_t m = n; m-- > 0;) r = r * shifted + outer[m];
    return r;
}

Jet invert_series(const Jet& f, double center) {
    const std::size_t J = f.order();
    if (f[1] == 0.0) throw SingularEvalError("series inversion requires nonzero first coefficient");
    // Solve A(B(w)) = w order by order, where A = f - f(0) and B has zero
    // constant term; the k-th coefficient enters A(B) linearly through f[1].
    Jet a = f;
    a[0] = 0.0;
    Jet b(J);
    for (std::size_t k = 1; k <= J; ++k) {
        Jet trial = compose(a, b);
        const double want = (k == 1) ? 1.0 : 0.0;
        b[k] = (want - trial[k]) / f[1];
    }
    b[0] = center;
    return b;
}

}  // namespace qcurve
