#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "oracle_fd.hpp"
#include "qcurve/jet.hpp"

using namespace qcurve;

TEST_CASE("seed and constant") {
    const Jet s = Jet::variable(2.0);
    CHECK(s.order() == 5);
    CHECK(s[0] == 2.0);
    CHECK(s[1] == 1.0);
    CHECK(s[2] == 0.0);

    const Jet c = Jet::constant(3.5);
    CHECK(c[0] == 3.5);
    CHECK(c[1] == 0.0);
}

TEST_CASE("polynomial arithmetic") {
    const Jet s = Jet::variable(2.0);
    const Jet sq = s * s;  // s^2 at 2: (4, 4, 1, 0, ...)
    CHECK(sq[0] == 4.0);
    CHECK(sq[1] == 4.0);
    CHECK(sq[2] == 1.0);
    CHECK(sq[3] == 0.0);

    const Jet zero = sq + (-sq);
    for (std::size_t m = 0; m <= zero.order(); ++m) CHECK(zero[m] == 0.0);
}

TEST_CASE("division: geometric series") {
    // 1/s at 1: coefficients (1, -1, 1, -1, ...)
    const Jet r = Jet::constant(1.0) / Jet::variable(1.0);
    for (std::size_t m = 0; m <= r.order(); ++m)
        CHECK(r[m] == doctest::Approx((m % 2 == 0) ? 1.0 : -1.0));
}

TEST_CASE("division by zero constant term") {
    CHECK_THROWS_AS(Jet::constant(1.0) / Jet::variable(0.0), SingularEvalError);
}

TEST_CASE("sine and cosine Maclaurin") {
    const auto [s, c] = sincos(Jet::variable(0.0));
    CHECK(s[0] == doctest::Approx(0.0));
    CHECK(s[1] == doctest::Approx(1.0));
    CHECK(s[2] == doctest::Approx(0.0));
    CHECK(s[3] == doctest::Approx(-1.0 / 6.0));
    CHECK(s[4] == doctest::Approx(0.0));
    CHECK(s[5] == doctest::Approx(1.0 / 120.0));

    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[1] == doctest::Approx(0.0));
    CHECK(c[2] == doctest::Approx(-0.5));
    CHECK(c[3] == doctest::Approx(0.0));
    CHECK(c[4] == doctest::Approx(1.0 / 24.0));
    CHECK(c[5] == doctest::Approx(0.0));
}

TEST_CASE("sin^2 + cos^2 is the constant-1 jet") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const Jet x = Jet::variable(u(rng));
        const auto [s, c] = sincos(x * x + 0.5 * x);  // composite argument
        const Jet one = s * s + c * c;
        CHECK(std::abs(one[0] - 1.0) <= 1e-12);
        for (std::size_t m = 1; m <= one.order(); ++m) CHECK(std::abs(one[m]) <= 1e-12);
    }
}

TEST_CASE("sqrt binomial series") {
    // sqrt(1+s) at 0: (1, 1/2, -1/8, 1/16, ...)
    const Jet r = sqrt(Jet::variable(0.0) + 1.0);
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK(r[1] == doctest::Approx(0.5));
    CHECK(r[2] == doctest::Approx(-0.125));
    CHECK(r[3] == doctest::Approx(0.0625));

    CHECK_THROWS_AS(sqrt(Jet::variable(0.0)), SingularEvalError);
    CHECK_THROWS_AS(sqrt(Jet::variable(-1.0)), SingularEvalError);
}

TEST_CASE("exp reproduces its derivative tower") {
    const Jet e = exp(Jet::variable(1.0));
    const double e1 = std::exp(1.0);
    for (std::size_t m = 0; m <= e.order(); ++m) {
        double fact = 1.0;
        for (std::size_t i = 2; i <= m; ++i) fact *= static_cast<double>(i);
        CHECK(e[m] == doctest::Approx(e1 / fact));
    }
}

TEST_CASE("extract derivatives") {
    // s^3 at 1: derivatives (1, 3, 6, 6)
    const Jet cube = pow_uint(Jet::variable(1.0), 3);
    const auto d = cube.derivatives(3);
    CHECK(d[0] == doctest::Approx(1.0));
    CHECK(d[1] == doctest::Approx(3.0));
    CHECK(d[2] == doctest::Approx(6.0));
    CHECK(d[3] == doctest::Approx(6.0));

    const Jet c = Jet::constant(4.25);
    const auto dc = c.derivatives(2);
    CHECK(dc[0] == 4.25);
    CHECK(dc[1] == 0.0);
    CHECK(dc[2] == 0.0);

    const Jet s = sin(Jet::variable(0.0));
    const auto ds = s.derivatives(1);
    CHECK(ds[0] == doctest::Approx(0.0));
    CHECK(ds[1] == doctest::Approx(1.0));

    CHECK_THROWS_AS(c.derivatives(6), OrderError);
}

TEST_CASE("order mismatch is rejected") {
    CHECK_THROWS_AS(Jet::variable(0.0, 5) + Jet::variable(0.0, 6), OrderError);
}

TEST_CASE("jet derivatives match Richardson finite differences") {
    auto f = [](double x) { return std::sin(2 * x) / (2.0 + std::cos(x)); };
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int rep = 0; rep < 20; ++rep) {
        const double x0 = u(rng);
        const Jet x = Jet::variable(x0);
        const Jet y = sin(2.0 * x) / (cos(x) + 2.0);
        const auto d = y.derivatives(4);
        for (int m = 1; m <= 4; ++m) {
            const double fd = oracle::deriv(f, x0, m, oracle::step_for_order(m));
            CHECK(std::abs(d[m] - fd) <= 1e-6 * (1.0 + std::abs(d[m])));
        }
    }
}

TEST_CASE("compose and invert series") {
    // exp(sin(s)) at 0 via compose equals direct evaluation.
    const Jet inner = sin(Jet::variable(0.3));
    const Jet outer = exp(Jet::variable(inner.value()));
    const Jet composed = compose(outer, inner);
    const Jet direct = exp(sin(Jet::variable(0.3)));
    for (std::size_t m = 0; m <= composed.order(); ++m)
        CHECK(composed[m] == doctest::Approx(direct[m]).epsilon(1e-13));

    // Inverse series of phi(t) = exp(t) at t0=0.5 is log about exp(0.5).
    const Jet phi = exp(Jet::variable(0.5));
    const Jet inv = invert_series(phi, 0.5);
    CHECK(inv[0] == doctest::Approx(0.5));
    const double y0 = std::exp(0.5);
    CHECK(inv[1] == doctest::Approx(1.0 / y0));
    CHECK(inv[2] == doctest::Approx(-1.0 / (2 * y0 * y0)));
    CHECK(inv[3] == doctest::Approx(1.0 / (3 * y0 * y0 * y0)));
}
