#include "hk/geometry.hpp"

#include <cmath>

#include "hk/quadrature.hpp"
#include "hk/specfun.hpp"

namespace hk {

HyperbolicSpace::HyperbolicSpace(int dim) : n(dim) {
    if (n < 2) throw std::domain_error("HyperbolicSpace: n >= 2 required");
    rho = 0.5 * (n - 1);
    jacobi_alpha = 0.5 * (n - 2);
    jacobi_beta = -0.5;
    omega = 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

double volume_density(const HyperbolicSpace& space, double r) {
    return space.omega * std::pow(std::sinh(r), space.n - 1);
}

double log_volume_density(const HyperbolicSpace& space, double r) {
    if (r <= 0.0) return -INFINITY;
    // log sinh r = r + log((1 - e^{-2r})/2)
    const double log_sinh = r + std::log1p(-std::exp(-2.0 * r)) - M_LN2;
    return std::log(space.omega) + (space.n - 1) * log_sinh;
}

namespace {

// sin(x)/x with the removable singularity handled.
double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// x/sinh(x), even, 1 at 0.
double x_over_sinh(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return x / std::sinh(x);
}

}  // namespace

double phi_lambda_integral(const HyperbolicSpace& space, double lambda, double r) {
    if (r < 0.0) throw std::domain_error("phi_lambda: r >= 0 required");
    if (r == 0.0) return 1.0;
    const double rho = space.rho;
    // normalization 1 / int_0^pi sin^{n-2}
    const double cn = std::tgamma(0.5 * space.n) /
                      (std::sqrt(M_PI) * std::tgamma(0.5 * (space.n - 1)));
    if (r <= 4.0) {
        // theta-integral, Gauss-Legendre with doubling until settled.
        const double ch = std::cosh(r), sh = std::sinh(r);
        const int p = space.n - 2;
        auto integrand = [&](double theta) {
            const double base = ch - sh * std::cos(theta);
            const double L = std::log(base);
            double s = 1.0;
            const double st = std::sin(theta);
            for (int k = 0; k < p; ++k) s *= st;
            return std::exp(-rho * L) * std::cos(lambda * L) * s;
        };
        double prev = 0.0;
        for (int m = 64; m <= 16384; m *= 2) {
            const auto& rule = gauss_legendre(m);
            double sum = 0.0;
            for (int i = 0; i < m; ++i) {
                const double theta = 0.5 * M_PI * (rule.x[i] + 1.0);
                sum += rule.w[i] * integrand(theta);
            }
            sum *= 0.5 * M_PI * cn;
            if (m > 64 && std::abs(sum - prev) <= 1e-10 * std::abs(sum) + 1e-16)
                return sum;
            prev = sum;
        }
        throw QuadratureError("phi_lambda: Gauss-Legendre doubling did not settle",
                              {prev, 1e-10, 16384});
    }
    // For large r the theta-integrand develops an e^{-r}-width boundary layer;
    // substitute L = log(cosh r - sinh r cos theta):
    //   phi = c_n sinh^{2-n}(r) int_{-r}^{r} e^{(1-rho)L} cos(lambda L)
    //           [(e^L - e^{-r})(e^r - e^L)]^{(n-3)/2} dL,
    // then L = -r cos(2w), under which the endpoint factors come out as exact
    // powers (sin w cos w)^{n-2}:
    //   phi = c_n sinh^{2-n}(r) 4r int_0^{pi/2} e^{(1-rho)L} cos(lambda L)
    //           e^{q(L-r)} (A B)^q (sin w cos w)^{n-2} dw,  q = (n-3)/2,
    //   A = expm1(2r sin^2 w)/sin^2 w, B = expm1(2r cos^2 w)/cos^2 w.
    const double q = 0.5 * (space.n - 3);
    auto expm1_over = [](double x) { return (x < 1e-250) ? 1.0 : std::expm1(x) / x; };
    auto g = [&](double w) {
        const double sw = std::sin(w), cw = std::cos(w);
        const double s2 = sw * sw, c2 = cw * cw;
        const double L = -r * std::cos(2.0 * w);
        const double A = 2.0 * r * expm1_over(2.0 * r * s2);
        const double B = 2.0 * r * expm1_over(2.0 * r * c2);
        double endpow = 1.0;
        for (int k = 0; k < space.n - 2; ++k) endpow *= sw * cw;
        return std::exp((1.0 - rho) * L + q * (L - r)) * std::cos(lambda * L) *
               std::pow(A * B, q) * endpow;
    };
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-11;
    cfg.abs_tol = 1e-16;
    const double integral = 4.0 * r * integrate(g, 0.0, 0.5 * M_PI, cfg).value;
    return cn * std::pow(std::sinh(r), 2.0 - space.n) * integral;
}

double phi_lambda(const HyperbolicSpace& space, double lambda, double r) {
    if (r < 0.0) throw std::domain_error("phi_lambda: r >= 0 required");
    if (space.n == 3) return sinc(lambda * r) * x_over_sinh(r);
    return phi_lambda_integral(space, lambda, r);
}

double phi_zero(const HyperbolicSpace& space, double r) { return phi_lambda(space, 0.0, r); }

double phi_zero_envelope(const HyperbolicSpace& space, double r) {
    return (1.0 + r) * std::exp(-space.rho * r);
}

double plancherel_density(const HyperbolicSpace& space, double lambda) {
    const int n = space.n;
    const double l2 = lambda * lambda;
    double ratio;  // |Gamma(i lambda + rho)|^2 / |Gamma(i lambda)|^2
    if (n % 2 == 1) {
        const int m = (n - 1) / 2;
        ratio = 1.0;
        for (int k = 0; k < m; ++k) ratio *= l2 + double(k) * k;
    } else {
        const int m = (n - 2) / 2;
        ratio = lambda * std::tanh(M_PI * lambda);
        for (int k = 0; k < m; ++k) {
            const double half = k + 0.5;
            ratio *= l2 + half * half;
        }
    }
    const double cc = std::pow(2.0, n - 2) * std::tgamma(0.5 * n) / std::sqrt(M_PI);
    return ratio / (cc * cc);
}

double inversion_constant(const HyperbolicSpace& space) {
    return std::pow(2.0, space.n - 1) / (2.0 * M_PI * space.omega);
}

double distance_polar(double r1, double r2, double theta) {
    if (r1 < 0.0 || r2 < 0.0) throw std::domain_error("distance_polar: radii >= 0");
    if (theta < 0.0 || theta > M_PI) throw std::domain_error("distance_polar: theta in [0, pi]");
    // cosh d - 1 = 2 sinh^2((r1-r2)/2) + 2 sinh r1 sinh r2 sin^2(theta/2),
    // evaluated as d = 2 asinh(sqrt(...)) which is stable in every regime.
    const double sd = std::sinh(0.5 * (r1 - r2));
    const double st = std::sin(0.5 * theta);
    const double q = sd * sd + std::sinh(r1) * std::sinh(r2) * st * st;
    return 2.0 * std::asinh(std::sqrt(std::max(q, 0.0)));
}

}  // namespace hk
