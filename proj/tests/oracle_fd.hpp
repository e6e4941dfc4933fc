#pragma once

// Finite-difference oracles, independent of the jet differentiation path.
// Central differences with Richardson extrapolation; curvature functions via
// the closed determinant formulas for unit-speed curves.

#include <array>
#include <cmath>
#include <functional>

#include "qcurve/curve.hpp"

namespace oracle {

using qcurve::JetCurve;

template <class F>
double central_diff(const F& f, double x, int order, double h) {
    switch (order) {
        case 1: return (f(x + h) - f(x - h)) / (2 * h);
        case 2: return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
        case 3: return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
        case 4:
            return (f(x + 2 * h) - 4 * f(x + h) + 6 * f(x) - 4 * f(x - h) + f(x - 2 * h)) /
                   (h * h * h * h);
        default: throw std::invalid_argument("central_diff supports orders 1..4");
    }
}

/// Richardson-extrapolated central difference.  The error expansion is even
/// in h, so each level gains two orders.
template <class F>
double deriv(const F& f, double x, int order, double h0, int levels = 3) {
    std::array<double, 8> table{};
    for (int i = 0; i <= levels; ++i) table[i] = central_diff(f, x, order, h0 / std::pow(2.0, i));
    double factor = 4.0;
    for (int k = 1; k <= levels; ++k) {
        for (int i = levels; i >= k; --i)
            table[i] = (factor * table[i] - table[i - 1]) / (factor - 1.0);
        factor *= 4.0;
    }
    return table[levels];
}

inline double step_for_order(int order) {
    switch (order) {
        case 1: return 1e-3;
        case 2: return 1e-2;
        case 3: return 5e-2;
        default: return 1e-1;
    }
}

inline std::array<double, 4> fd_derivative(const JetCurve& c, double s, int order) {
    std::array<double, 4> out{};
    for (int i = 0; i < c.dim(); ++i) {
        auto f = [&c, i](double x) { return c.position(x)[i]; };
        out[i] = (order == 0) ? f(s) : deriv(f, s, order, step_for_order(order));
    }
    return out;
}

inline double dot(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double det3(const std::array<double, 4>& a, const std::array<double, 4>& b,
                   const std::array<double, 4>& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

inline double det4(const std::array<double, 4>& a, const std::array<double, 4>& b,
                   const std::array<double, 4>& c, const std::array<double, 4>& d) {
    double result = 0.0;
    for (int col = 0; col < 4; ++col) {
        std::array<double, 4> bm{}, cm{}, dm{};
        int j = 0;
        for (int i = 0; i < 4; ++i) {
            if (i == col) continue;
            bm[j] = b[i];
            cm[j] = c[i];
            dm[j] = d[i];
            ++j;
        }
        const double minor = bm[0] * (cm[1] * dm[2] - cm[2] * dm[1]) -
                             bm[1] * (cm[0] * dm[2] - cm[2] * dm[0]) +
                             bm[2] * (cm[0] * dm[1] - cm[1] * dm[0]);
        result += ((col % 2 == 0) ? 1.0 : -1.0) * a[col] * minor;
    }
    return result;
}

struct Apparatus3 {
    double k = 0;
    double r = 0;
};

/// Curvature and (signed) torsion of a unit-speed E3 curve from FD
/// derivatives: k = |a''|, r = det[a', a'', a''']/k^2.
inline Apparatus3 fd_apparatus3(const JetCurve& c, double s) {
    const auto d1 = fd_derivative(c, s, 1);
    const auto d2 = fd_derivative(c, s, 2);
    const auto d3 = fd_derivative(c, s, 3);
    Apparatus3 ap;
    ap.k = std::sqrt(dot(d2, d2));
    ap.r = det3(d1, d2, d3) / (ap.k * ap.k);
    return ap;
}

struct Apparatus4 {
    double K = 0;
    double k = 0;
    double bitorsion = 0;  // signed w.r.t. det[T N B1 B2] = +1
};

/// E4 curvature functions of a unit-speed curve from FD derivatives:
///   K   = |a''|
///   k   = |a''' + K^2 a' - K' N| / K     with N = a''/K, K' = <a'',a'''>/K
///   r-K = det[a', a'', a''', a''''] / (K^3 k^2)
inline Apparatus4 fd_apparatus4(const JetCurve& c, double s) {
    const auto d1 = fd_derivative(c, s, 1);
    const auto d2 = fd_derivative(c, s, 2);
    const auto d3 = fd_derivative(c, s, 3);
    const auto d4 = fd_derivative(c, s, 4);
    Apparatus4 ap;
    ap.K = std::sqrt(dot(d2, d2));
    const double Kp = dot(d2, d3) / ap.K;
    std::array<double, 4> w{};
    for (int i = 0; i < 4; ++i)
        w[i] = d3[i] + ap.K * ap.K * d1[i] - (Kp / ap.K) * d2[i];
    ap.k = std::sqrt(dot(w, w)) / ap.K;
    ap.bitorsion = det4(d1, d2, d3, d4) / (ap.K * ap.K * ap.K * ap.k * ap.k);
    return ap;
}

}  // namespace oracle
