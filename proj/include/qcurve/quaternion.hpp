#pragma once

#include <array>
#include <cmath>

namespace qcurve {

/// Real quaternion q = a e1 + b e2 + c e3 + d e4 with e4 = 1 the scalar unit.
///
/// The coefficient tuple (a, b, c, d) doubles as a point of E4 (scalar part
/// last); spatial quaternions (d = 0) are identified with vectors of E3.
/// Basis products: e1 e2 = e3, e2 e3 = e1, e3 e1 = e2, ei^2 = -1.
struct Quaternion {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double a, double b, double c, double d) : a(a), b(b), c(c), d(d) {}

    /// Scalar part S_q = d.
    constexpr double scalar_part() const { return d; }
    /// Vector part V_q = (a, b, c).
    constexpr std::array<double, 3> vector_part() const { return {a, b, c}; }

    static constexpr Quaternion unit() { return {0, 0, 0, 1}; }
    static constexpr Quaternion e1() { return {1, 0, 0, 0}; }
    static constexpr Quaternion e2() { return {0, 1, 0, 0}; }
    static constexpr Quaternion e3() { return {0, 0, 1, 0}; }
    static constexpr Quaternion e4() { return {0, 0, 0, 1}; }

    /// E3 point as a spatial quaternion.
    static constexpr Quaternion spatial(double x, double y, double z) { return {x, y, z, 0}; }

    constexpr Quaternion operator+(const Quaternion& q) const {
        return {a + q.a, b + q.b, c + q.c, d + q.d};
    }
    constexpr Quaternion operator-(const Quaternion& q) const {
        return {a - q.a, b - q.b, c - q.c, d - q.d};
    }
    constexpr Quaternion operator-() const { return {-a, -b, -c, -d}; }
    constexpr Quaternion operator*(double t) const { return {a * t, b * t, c * t, d * t}; }

    constexpr bool operator==(const Quaternion&) const = default;
};

constexpr Quaternion operator*(double t, const Quaternion& q) { return q * t; }

/// Quaternion product p x q = S_p S_q - <V_p,V_q> + S_p V_q + S_q V_p + V_p ^ V_q.
constexpr Quaternion mul(const Quaternion& p, const Quaternion& q) {
    return {
        p.d * q.a + q.d * p.a + (p.b * q.c - p.c * q.b),
        p.d * q.b + q.d * p.b + (p.c * q.a - p.a * q.c),
        p.d * q.c + q.d * p.c + (p.a * q.b - p.b * q.a),
        p.d * q.d - (p.a * q.a + p.b * q.b + p.c * q.c),
    };
}

/// Hamiltonian conjugation: negates the vector part, fixes the scalar part.
constexpr Quaternion conj(const Quaternion& q) { return {-q.a, -q.b, -q.c, q.d}; }

/// Symmetric bilinear form h(p, q) = (1/2)[p x conj(q) + q x conj(p)].
/// Equals the Euclidean dot product of the coefficient 4-tuples.
constexpr double hform(const Quaternion& p, const Quaternion& q) {
    const Quaternion s = mul(p, conj(q)) + mul(q, conj(p));
    return 0.5 * s.d;
}

/// Euclidean norm, sqrt(h(q, q)).
inline double norm(const Quaternion& q) { return std::sqrt(hform(q, q)); }

/// True iff q + conj(q) = 2 S_q vanishes within tol, i.e. q is identified
/// with an E3 vector.
inline bool is_spatial(const Quaternion& q, double tol) { return std::abs(2.0 * q.d) <= tol; }

/// Cross product of the vector parts; the quaternion product restricted to
/// spatial quaternions up to the scalar term.
constexpr Quaternion vector_cross(const Quaternion& p, const Quaternion& q) {
    return {p.b * q.c - p.c * q.b, p.c * q.a - p.a * q.c, p.a * q.b - p.b * q.a, 0.0};
}

}  // namespace qcurve
