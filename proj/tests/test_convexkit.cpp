#include <doctest.h>

#include <cmath>
#include <random>

#include "ldp/convex.hpp"

using namespace ldp;

TEST_CASE("log_integral: Gaussian, Laplace, quartic") {
    double gauss = log_integral({[](double x) { return -0.5 * x * x; }, {}});
    CHECK(gauss == doctest::Approx(0.5 * std::log(2.0 * M_PI)).epsilon(1e-10));

    double laplace = log_integral({[](double x) { return -std::fabs(x); }, {}});
    CHECK(laplace == doctest::Approx(std::log(2.0)).epsilon(1e-10));

    // Gamma-function substitution oracle: integral of exp(-x^4/4) over R is
    // 2 * 4^{-3/4} * Gamma(1/4).
    double want = std::log(2.0) - 0.75 * std::log(4.0) + std::lgamma(0.25);
    double quartic = log_integral({[](double x) { return -0.25 * std::pow(x, 4.0); }, {}});
    CHECK(quartic == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("log_integral: Gaussian scale sweep") {
    for (double s : {0.03, 0.5, 1.0, 7.0, 250.0}) {
        double got = log_integral({[s](double x) { return -0.5 * x * x / (s * s); }, {}}, 1e-10);
        CHECK(got == doctest::Approx(0.5 * std::log(2.0 * M_PI * s * s)).epsilon(1e-9));
    }
}

TEST_CASE("log_integral: bounded domains and error paths") {
    // Uniform on [0, 3].
    double u = log_integral({[](double) { return 0.0; }, Interval{0.0, 3.0}});
    CHECK(u == doctest::Approx(std::log(3.0)).epsilon(1e-10));

    CHECK_THROWS_AS(log_integral({[](double) { return 0.0; }, {}}, 1e-8), NonIntegrable);
    CHECK_THROWS_AS(log_integral({[](double x) { return -x * x; }, {}}, 0.0), InvalidTol);
    CHECK_THROWS_AS(log_integral({[](double x) { return -x * x; }, {}}, -1.0), InvalidTol);
}

TEST_CASE("legendre_1d: quadratic and chi-square conjugates") {
    Fn1D quad{[](double t) { return 0.5 * t * t; }, {}};
    CHECK(legendre_1d(quad, 3.0) == doctest::Approx(4.5).epsilon(1e-10));

    Fn1D chi{[](double t) { return -0.5 * std::log1p(-2.0 * t); }, Interval{-kInf, 0.5}};
    CHECK(legendre_1d(chi, 1.0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(legendre_1d(chi, 2.0) == doctest::Approx(0.5 - 0.5 * std::log(2.0)).epsilon(1e-10));
    // Analytic conjugate (x-1)/2 - log(x)/2 across a grid.
    for (double x : {0.25, 0.5, 0.8, 1.5, 3.0, 6.0}) {
        double want = 0.5 * (x - 1.0) - 0.5 * std::log(x);
        CHECK(legendre_1d(chi, x) == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("legendre_1d: biduality and Young's inequality") {
    auto f = [](double t) { return 0.5 * t * t + t * t * t * t / 12.0; };
    Fn1D fh{f, {}};
    Fn1D conj{[&](double x) { return legendre_1d(fh, x); }, {}};
    for (int i = 0; i < 50; ++i) {
        double t = -2.0 + 4.0 * i / 49.0;
        double bidual = legendre_1d(conj, t);
        CHECK(std::fabs(bidual - f(t)) < 1e-6);
    }
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 40; ++i) {
        double x = u(rng), t = u(rng);
        CHECK(x * t <= f(t) + legendre_1d(fh, x) + 1e-8);
    }
}

TEST_CASE("legendre_1d: divergence and non-convexity") {
    // Linear f: conjugate is infinite except at the slope.
    Fn1D lin{[](double t) { return 2.0 * t; }, {}};
    CHECK(legendre_1d(lin, 3.0) == kInf);
    Fn1D conc{[](double t) { return -t * t; }, {}};
    CHECK_THROWS_AS(legendre_1d(conc, 1.0), NotConvex);
}

TEST_CASE("minimize_unimodal: calculus examples") {
    auto r1 = minimize_unimodal({[](double c) { return 0.5 * c * c + 1.0 / c; }, {}},
                                Interval{1e-9, 10.0});
    CHECK(r1.arg == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(r1.value == doctest::Approx(1.5).epsilon(1e-10));

    auto r2 = minimize_unimodal({[](double c) { return (c - 2.0) * (c - 2.0); }, {}},
                                Interval{1e-9, 5.0});
    CHECK(r2.arg == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(r2.value == doctest::Approx(0.0).epsilon(1e-12));

    // Expansion: stationarity c^3 = x with x = 1, bracket seeded away from it.
    auto r3 = minimize_unimodal({[](double c) { return 1.0 / c + 0.5 * c * c; }, {}},
                                Interval{0.05, 0.2});
    CHECK(r3.arg == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(r3.value == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("minimize_unimodal: quadratic vertex property") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 25; ++i) {
        double a = u(rng);
        auto r = minimize_unimodal({[a](double c) { return (c - a) * (c - a) + 0.3; }, {}},
                                   Interval{a - 1.0, a + 1.7}, 1e-10);
        CHECK(std::fabs(r.arg - a) <= 1e-8);
    }
}

TEST_CASE("minimize_unimodal: error paths") {
    CHECK_THROWS_AS(minimize_unimodal({[](double c) { return -c; }, {}}, Interval{0.0, 1.0}),
                    BracketFailure);
    CHECK_THROWS_AS(minimize_unimodal({[](double c) { return c * c; }, {}}, Interval{0.0, 1.0}, 0.0),
                    InvalidTol);
}

TEST_CASE("maximize_concave_2d: closed-form examples") {
    auto r1 = maximize_concave_2d([](double s, double t) { return -s * s - t * t; }, {2.0, -3.0});
    CHECK(r1.value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::fabs(r1.s) < 1e-4);
    CHECK(std::fabs(r1.t) < 1e-4);

    auto r2 = maximize_concave_2d(
        [](double s, double t) { return s + t - std::exp(s) - std::exp(t); }, {3.0, -2.0});
    CHECK(r2.value == doctest::Approx(-2.0).epsilon(1e-10));

    // Tilted-integral objective for V(x) = x^2 at u = v = 1, with the s < 0
    // constraint through s = -e^a and the Gaussian integral in closed form.
    // The maximum sits on s + t = -1/2 with value -log(2 pi e)/2.
    auto h = [](double a, double t) {
        double s = -std::exp(a);
        double st = s + t;
        if (!(st < 0.0)) return -kInf;
        return s + t - 0.5 * (std::log(M_PI) - std::log(-st));
    };
    auto r3 = maximize_concave_2d(h, {0.0, 0.0});
    CHECK(r3.value == doctest::Approx(-0.5 * std::log(2.0 * M_PI * M_E)).epsilon(1e-9));
    CHECK(-std::exp(r3.s) + r3.t == doctest::Approx(-0.5).epsilon(1e-6));
}

TEST_CASE("maximize_concave_2d: init invariance for strictly concave h") {
    auto h = [](double s, double t) {
        return 3.0 - (s - 1.0) * (s - 1.0) - 2.0 * (t + 0.5) * (t + 0.5);
    };
    for (double s0 : {-5.0, 0.0, 4.0})
        for (double t0 : {-5.0, 0.5, 5.0}) {
            auto r = maximize_concave_2d(h, {s0, t0});
            CHECK(r.value == doctest::Approx(3.0).epsilon(1e-9));
            CHECK(r.s == doctest::Approx(1.0).epsilon(1e-4));
            CHECK(r.t == doctest::Approx(-0.5).epsilon(1e-4));
        }
}

TEST_CASE("maximize_concave_2d: diverging supremum is reported") {
    CHECK_THROWS_AS(maximize_concave_2d([](double s, double t) { return s + t; }, {0.0, 0.0}),
                    Diverging);
}

TEST_CASE("find_root_bracketed") {
    Fn1D cubic{[](double c) { return c * c * c - c - 6.0; }, {}};
    CHECK(find_root_bracketed(cubic, 1.0, 3.0) == doctest::Approx(2.0).epsilon(1e-12));

    Fn1D lin{[](double c) { return c - 1.0; }, {}};
    CHECK(find_root_bracketed(lin, 0.0, 2.0) == doctest::Approx(1.0).epsilon(1e-12));

    Fn1D pos{[](double c) { return c * c + 1.0; }, {}};
    CHECK_THROWS_AS(find_root_bracketed(pos, 0.0, 1.0), NoSignChange);
}
