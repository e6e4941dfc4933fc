#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "qcurve/quaternion.hpp"

using namespace qcurve;

namespace {

Quaternion random_quat(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng), u(rng), u(rng), u(rng)};
}

double max_abs_diff(const Quaternion& p, const Quaternion& q) {
    return std::max({std::abs(p.a - q.a), std::abs(p.b - q.b), std::abs(p.c - q.c),
                     std::abs(p.d - q.d)});
}

}  // namespace

TEST_CASE("basis multiplication table") {
    const Quaternion e1 = Quaternion::e1(), e2 = Quaternion::e2(), e3 = Quaternion::e3(),
                     e4 = Quaternion::e4();
    CHECK(mul(e1, e2) == e3);
    CHECK(mul(e2, e3) == e1);
    CHECK(mul(e3, e1) == e2);
    CHECK(mul(e2, e1) == -e3);
    CHECK(mul(e3, e2) == -e1);
    CHECK(mul(e1, e3) == -e2);
    CHECK(mul(e1, e1) == -e4);
    CHECK(mul(e2, e2) == -e4);
    CHECK(mul(e3, e3) == -e4);
    CHECK(mul(e4, e4) == e4);
}

TEST_CASE("e4 is the unit") {
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
        const Quaternion q = random_quat(rng);
        CHECK(mul(Quaternion::e4(), q) == q);
        CHECK(mul(q, Quaternion::e4()) == q);
    }
}

TEST_CASE("product expansion example") {
    // (1 + e1)(1 + e2) = 1 + e1 + e2 + e3
    const Quaternion p{1, 0, 0, 1}, q{0, 1, 0, 1};
    CHECK(mul(p, q) == Quaternion{1, 1, 1, 1});
}

TEST_CASE("conjugation") {
    CHECK(conj(Quaternion::e1()) == -Quaternion::e1());
    CHECK(conj(Quaternion::e4()) == Quaternion::e4());
    CHECK(conj(Quaternion{1, 1, 1, 1}) == Quaternion{-1, -1, -1, 1});

    std::mt19937 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Quaternion q = random_quat(rng);
        CHECK(conj(conj(q)) == q);
        // q + conj(q) is a real multiple of e4
        const Quaternion s = q + conj(q);
        CHECK(s.a == 0.0);
        CHECK(s.b == 0.0);
        CHECK(s.c == 0.0);
        CHECK(s.d == doctest::Approx(2 * q.d));
    }
}

TEST_CASE("conjugation reverses products") {
    std::mt19937 rng(13);
    for (int i = 0; i < 10000; ++i) {
        const Quaternion p = random_quat(rng), q = random_quat(rng);
        CHECK(max_abs_diff(conj(mul(p, q)), mul(conj(q), conj(p))) <= 1e-12);
    }
}

TEST_CASE("h form is the coefficient dot product") {
    CHECK(hform(Quaternion::e1(), Quaternion::e1()) == 1.0);
    CHECK(hform(Quaternion::e1(), Quaternion::e2()) == 0.0);
    CHECK(hform(Quaternion{1, 0, 0, 1}, Quaternion{-1, 0, 0, 1}) == 0.0);

    std::mt19937 rng(17);
    for (int i = 0; i < 10000; ++i) {
        const Quaternion p = random_quat(rng), q = random_quat(rng);
        const double dot = p.a * q.a + p.b * q.b + p.c * q.c + p.d * q.d;
        CHECK(hform(p, q) == doctest::Approx(dot).epsilon(1e-14));
        CHECK(hform(p, q) == doctest::Approx(hform(q, p)));
        // the symmetrized product has zero vector part
        const Quaternion sym = mul(p, conj(q)) + mul(q, conj(p));
        CHECK(std::abs(sym.a) <= 1e-14);
        CHECK(std::abs(sym.b) <= 1e-14);
        CHECK(std::abs(sym.c) <= 1e-14);
    }
}

TEST_CASE("norm") {
    CHECK(norm(Quaternion::e3()) == 1.0);
    CHECK(norm(Quaternion{}) == 0.0);
    CHECK(norm(Quaternion{1, 1, 1, 1}) == doctest::Approx(2.0));

    std::mt19937 rng(19);
    for (int i = 0; i < 5000; ++i) {
        Quaternion p = random_quat(rng), q = random_quat(rng);
        // multiplicative
        CHECK(norm(mul(p, q)) == doctest::Approx(norm(p) * norm(q)).epsilon(1e-12));
        // unit quaternions stay unit under the product
        if (norm(p) > 0.1 && norm(q) > 0.1) {
            p = p * (1.0 / norm(p));
            q = q * (1.0 / norm(q));
            CHECK(std::abs(norm(mul(p, q)) - 1.0) <=
                  4 * std::numeric_limits<double>::epsilon());
        }
    }
}

TEST_CASE("associativity and distributivity") {
    std::mt19937 rng(23);
    for (int i = 0; i < 10000; ++i) {
        const Quaternion p = random_quat(rng), q = random_quat(rng), r = random_quat(rng);
        CHECK(max_abs_diff(mul(mul(p, q), r), mul(p, mul(q, r))) <= 1e-12);
        CHECK(max_abs_diff(mul(p, q + r), mul(p, q) + mul(p, r)) <= 1e-12);
        CHECK(max_abs_diff(mul(p + q, r), mul(p, r) + mul(q, r)) <= 1e-12);
    }
}

TEST_CASE("spatial predicate") {
    CHECK(is_spatial(Quaternion{1, 2, 0, 0}, 0.0));
    CHECK_FALSE(is_spatial(Quaternion::e4(), 1e-6));
    CHECK(is_spatial(Quaternion{1, 0, 0, 1e-15}, 1e-12));
    CHECK_FALSE(is_spatial(Quaternion{1, 0, 0, 1e-11}, 1e-12));
}
