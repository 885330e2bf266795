#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hk/quadrature.hpp"
#include "hk/specfun.hpp"

using hk::bessel_k;
using hk::gamma_fn;
using hk::integrate;
using hk::integrate_half_line;

TEST_CASE("gamma: reference values") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    // Gamma(-1/2) = Gamma(1/2) / (-1/2)
    CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * std::sqrt(M_PI)).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-3.0), std::domain_error);
    // negative non-integer arguments in (-1,0) are negative
    CHECK(gamma_fn(-0.3) < 0.0);
}

TEST_CASE("gamma: recurrence on random grid") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-0.99, 5.0);
    int tested = 0;
    while (tested < 300) {
        const double x = dist(rng);
        if (std::abs(x) < 1e-3 || std::abs(x - std::round(x)) < 1e-3) continue;
        const double lhs = gamma_fn(x + 1.0);
        const double rhs = x * gamma_fn(x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        ++tested;
    }
}

TEST_CASE("bessel_k: half-integer closed forms") {
    // K_{1/2}(z) = sqrt(pi/(2z)) e^{-z}
    CHECK(bessel_k(0.5, 1.0) == doctest::Approx(0.4610685044).epsilon(1e-9));
    for (double x : {0.05, 0.3, 1.0, 2.0, 2.5, 7.0, 30.0}) {
        const double closed = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x);
        CHECK(bessel_k(0.5, x) / closed == doctest::Approx(1.0).epsilon(1e-13));
        // K_{3/2}(z) = sqrt(pi/(2z)) e^{-z} (1 + 1/z)
        const double closed32 = closed * (1.0 + 1.0 / x);
        CHECK(bessel_k(1.5, x) / closed32 == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("bessel_k: K_0(1) against series/CF and integral definition") {
    CHECK(bessel_k(0.0, 1.0) == doctest::Approx(0.4210244382).epsilon(1e-9));
    // integral definition K_nu(x) = int_0^inf e^{-x cosh u} cosh(nu u) du
    for (double nu : {0.0, 0.25, 0.7, 1.0, 2.3}) {
        for (double x : {0.4, 1.0, 3.0, 9.0}) {
            auto integrand = [&](double u) { return std::exp(-x * std::cosh(u)) * std::cosh(nu * u); };
            const double ref = integrate(integrand, 0.0, 30.0).value;
            CHECK(bessel_k(nu, x) == doctest::Approx(ref).epsilon(1e-10));
        }
    }
}

TEST_CASE("bessel_k: recurrence K_{nu+1} = K_{nu-1} + (2 nu/x) K_nu") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> xd(0.1, 30.0), nd(0.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double x = xd(rng), nu = nd(rng) + 1.0;
        const double lhs = bessel_k(nu + 1.0, x);
        const double rhs = bessel_k(nu - 1.0, x) + 2.0 * nu / x * bessel_k(nu, x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("bessel_k: derivative identity d/dz [z^-nu K_nu] = -z^-nu K_{nu+1}") {
    for (double nu : {0.0, 0.3, 1.2, 2.5}) {
        for (double z : {0.5, 1.0, 4.0, 11.0}) {
            const double h = 1e-5 * z;
            auto f = [&](double zz) { return std::pow(zz, -nu) * bessel_k(nu, zz); };
            const double dnum = (f(z + h) - f(z - h)) / (2.0 * h);
            const double dref = -std::pow(z, -nu) * bessel_k(nu + 1.0, z);
            CHECK(dnum == doctest::Approx(dref).epsilon(1e-6));
        }
    }
}

TEST_CASE("bessel_k: monotone decreasing in x, positive, and scaled variant") {
    double prev = bessel_k(0.8, 0.2);
    for (double x = 0.4; x < 20.0; x += 0.4) {
        const double v = bessel_k(0.8, x);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
    for (double x : {0.5, 2.0, 50.0, 300.0}) {
        CHECK(hk::bessel_k_scaled(1.3, x) ==
              doctest::Approx(bessel_k(1.3, x) * std::exp(x)).epsilon(1e-11));
    }
    CHECK_THROWS_AS(bessel_k(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k(1.0, -2.0), std::domain_error);
}

TEST_CASE("integrate: spec reference integrals") {
    auto r1 = integrate_half_line([](double t) { return std::exp(-t); });
    CHECK(r1.value == doctest::Approx(1.0).epsilon(1e-11));

    // int_0^inf t^{-1/2} e^{-t - 1/(4t)} dt = sqrt(pi) e^{-1}   [K_{1/2} reduction]
    hk::QuadratureConfig cfg;
    cfg.transform_hint = hk::QuadratureConfig::Hint::half_line_power_exponential;
    auto r2 = integrate_half_line(
        [](double t) { return std::exp(-t - 0.25 / t) / std::sqrt(t); }, cfg, 0.5);
    CHECK(r2.value == doctest::Approx(std::sqrt(M_PI) * std::exp(-1.0)).epsilon(1e-11));
    CHECK(std::sqrt(M_PI) * std::exp(-1.0) == doctest::Approx(0.6520493321).epsilon(1e-9));

    // endpoint singularity
    auto r3 = integrate([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0);
    CHECK(r3.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("integrate: deterministic") {
    auto f = [](double t) { return std::exp(-t * t) * std::cos(3.0 * t); };
    auto a = integrate(f, 0.0, 8.0);
    auto b = integrate(f, 0.0, 8.0);
    CHECK(a.value == b.value);  // bit-identical
    CHECK(a.evaluations == b.evaluations);
    auto c = integrate_half_line([](double t) { return std::exp(-t) * std::sin(t); });
    auto d = integrate_half_line([](double t) { return std::exp(-t) * std::sin(t); });
    CHECK(c.value == d.value);
    CHECK(c.value == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("integrate: error reporting carries best estimate") {
    hk::QuadratureConfig cfg;
    cfg.max_subdivisions = 3;
    cfg.abs_tol = 1e-300;
    cfg.rel_tol = 1e-300;
    bool threw = false;
    try {
        integrate([](double t) { return 1.0 / std::sqrt(std::abs(t - 0.3141)); }, 0.0, 1.0, cfg);
    } catch (const hk::QuadratureError& e) {
        threw = true;
        CHECK(e.best_estimate.value == doctest::Approx(2.0 * (std::sqrt(0.3141) + std::sqrt(1.0 - 0.3141))).epsilon(1e-2));
        CHECK(e.best_estimate.error_estimate > 0.0);
    }
    CHECK(threw);
}

TEST_CASE("gauss_legendre: exactness and symmetry") {
    const auto& r = hk::gauss_legendre(64);
    double s = 0.0, s7 = 0.0;
    for (int i = 0; i < 64; ++i) {
        s += r.w[i];
        s7 += r.w[i] * std::pow(r.x[i], 8);
    }
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s7 == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
}
