#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hk/heat.hpp"
#include "hk/quadrature.hpp"

using hk::HyperbolicSpace;
using hk::heat_kernel;
using hk::heat_kernel_complex;
using hk::heat_mass;

TEST_CASE("H^3 closed form reference values") {
    HyperbolicSpace h3(3);
    CHECK(heat_kernel(h3, 1.0, 0.0) ==
          doctest::Approx(std::pow(4.0 * M_PI, -1.5) * std::exp(-1.0)).epsilon(1e-14));
    CHECK(heat_kernel(h3, 1.0, 0.0) == doctest::Approx(8.2584e-3).epsilon(2e-5));
    const double r = 2.0, t = 0.7;
    const double ref = std::pow(4.0 * M_PI * t, -1.5) * (r / std::sinh(r)) *
                       std::exp(-t - r * r / (4.0 * t));
    CHECK(heat_kernel(h3, t, r) == doctest::Approx(ref).epsilon(1e-14));
}

TEST_CASE("unit mass across dimensions and times") {
    for (int n : {2, 3, 4, 5}) {
        HyperbolicSpace sp(n);
        for (double t : {0.1, 1.0, 10.0}) {
            const double tol = (n % 2 == 1) ? 1e-8 : 1e-6;
            CHECK(std::abs(heat_mass(sp, t) - 1.0) <= tol);
        }
    }
}

TEST_CASE("complex-group formula coincides with H^3") {
    HyperbolicSpace h3(3);
    CHECK(heat_kernel_complex(1.0, 1.0, 0.0) ==
          doctest::Approx(heat_kernel(h3, 1.0, 0.0)).epsilon(1e-12));
    for (double r : {0.5, 2.0, 6.0}) {
        CHECK(heat_kernel_complex(1.0, 1.0, r) / heat_kernel(h3, 1.0, r) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    // r -> 0 limit of the product a r / sinh(a r)
    CHECK(heat_kernel_complex(2.0, 1.0, 1e-12) * std::pow(4.0 * M_PI, 1.5) *
              std::exp(4.0) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("descent recursion links H^3 to H^5") {
    // h^{(5)}_t(r) = -e^{-3t}/(2 pi sinh r) d/dr h^{(3)}_t(r)
    HyperbolicSpace h3(3), h5(5);
    for (double t : {0.5, 1.0, 3.0}) {
        for (double r : {0.4, 1.0, 2.5, 5.0}) {
            const double h = 1e-5;
            const double der =
                (heat_kernel(h3, t, r + h) - heat_kernel(h3, t, r - h)) / (2.0 * h);
            const double lhs = -std::exp(-3.0 * t) / (2.0 * M_PI * std::sinh(r)) * der;
            CHECK(lhs == doctest::Approx(heat_kernel(h5, t, r)).epsilon(1e-8));
        }
    }
}

TEST_CASE("H^2 kernel matches the Abel-integral reference form") {
    // sqrt(2) (4 pi t)^{-3/2} e^{-t/4} int_r^inf s e^{-s^2/4t} / sqrt(cosh s - cosh r) ds
    HyperbolicSpace h2(2);
    for (double t : {0.4, 1.0, 2.5}) {
        for (double r : {0.0, 0.3, 1.2, 3.0}) {
            // substitute s = r + w^2; with cosh s - cosh r = 2 sinh((s+r)/2) sinh(w^2/2)
            // the w-integrand is smooth at w = 0.
            auto integrand = [&](double w) {
                const double s = r + w * w;
                const double half = 0.5 * w * w;
                const double shc = (half < 1e-8) ? 1.0 + half * half / 6.0 : std::sinh(half) / half;
                return 2.0 * s * std::exp(-s * s / (4.0 * t)) /
                       std::sqrt(std::sinh(0.5 * (s + r)) * shc);
            };
            hk::QuadratureConfig cfg;
            cfg.abs_tol = 1e-13;
            cfg.rel_tol = 1e-11;
            const double upper = std::sqrt(std::sqrt(4.0 * t * 45.0) + 8.0);
            const double integral = hk::integrate(integrand, 0.0, upper, cfg).value;
            const double ref = std::sqrt(2.0) * std::pow(4.0 * M_PI * t, -1.5) *
                               std::exp(-0.25 * t) * integral;
            CHECK(heat_kernel(h2, t, r) == doctest::Approx(ref).epsilon(1e-7));
        }
    }
}

TEST_CASE("positivity and monotone decay in r") {
    for (int n : {2, 3, 4, 5}) {
        HyperbolicSpace sp(n);
        for (double t : {0.2, 1.0, 5.0}) {
            double prev = heat_kernel(sp, t, 0.0);
            CHECK(prev > 0.0);
            for (double r = 0.25; r <= 8.0; r += 0.25) {
                const double v = heat_kernel(sp, t, r);
                CHECK(v > 0.0);
                CHECK(v < prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("log_heat_kernel consistent and usable far out") {
    for (int n : {2, 3, 4, 5}) {
        HyperbolicSpace sp(n);
        for (double r : {0.5, 4.0, 12.0}) {
            CHECK(hk::log_heat_kernel(sp, 1.3, r) ==
                  doctest::Approx(std::log(heat_kernel(sp, 1.3, r))).epsilon(1e-9));
        }
        // far beyond double underflow of the kernel itself
        const double lk = hk::log_heat_kernel(sp, 2.0, 90.0);
        CHECK(std::isfinite(lk));
        CHECK(lk < -900.0);
    }
}

TEST_CASE("two-sided heat bounds: bounded ratio envelope") {
    for (int n : {2, 3, 4}) {
        HyperbolicSpace sp(n);
        auto rep = hk::validate_heat_bounds(sp, {0.1, 0.3, 1.0, 3.0, 10.0}, 2.0);
        CHECK(rep.ratio_min > 0.0);
        CHECK(rep.ratio_max / rep.ratio_min <= 10.0);  // calibration: observed <= ~6
        CHECK(rep.pass);
        // small-(t,r) corner approaches the Euclidean normalization
        CHECK(rep.corner_ratio == doctest::Approx(1.0).epsilon(2e-3));
        CHECK(std::isfinite(rep.fitted_d1));
        CHECK(std::isfinite(rep.fitted_d2));
    }
}

TEST_CASE("domain errors") {
    HyperbolicSpace h3(3);
    CHECK_THROWS_AS(heat_kernel(h3, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(heat_kernel(h3, 1.0, -1.0), std::domain_error);
    HyperbolicSpace h6(6);
    CHECK_THROWS_AS(heat_kernel(h6, 1.0, 1.0), std::domain_error);
}
