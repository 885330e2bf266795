#include "hk/heat.hpp"

#include <array>
#include <cmath>
#include <mutex>

#include "hk/quadrature.hpp"

namespace hk {

namespace {

double x_over_sinh(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return x / std::sinh(x);
}

double log_sinh(double r) { return r + std::log1p(-std::exp(-2.0 * r)) - M_LN2; }

// Q2 = (z^2 - 2t + 2 t z coth z) / sinh^2 z, the m=2 descent bracket.
// Series below z = 0.05 avoids the -2t cancellation.
double descent2_bracket(double t, double z) {
    if (z < 0.05) {
        const double z2 = z * z;
        const double num = (1.0 + 2.0 * t / 3.0) + z2 * (-2.0 * t / 45.0 + z2 * (4.0 * t / 945.0));
        const double den = 1.0 + z2 * (1.0 / 3.0 + z2 * (2.0 / 45.0 + z2 / 315.0));
        return num / den;
    }
    const double sh = std::sinh(z);
    const double b = z * z - 2.0 * t + 2.0 * t * z * std::cosh(z) / sh;
    return b / (sh * sh);
}

// z(r, u) with cosh z = cosh r cosh u, computed stably.
double abel_z(double r, double u) {
    const double sd = std::sinh(0.5 * (r - u));
    const double q = sd * sd + 0.5 * std::sinh(r) * std::sinh(u);
    return 2.0 * std::asinh(std::sqrt(std::max(q, 0.0)));
}

double unnormalized_even(int n, double t, double r, bool log_form) {
    const int m = n / 2;  // descent order
    const double U = t + std::sqrt(180.0 * t) + 12.0;
    // factor e^{-r^2/4t} out of the integrand so the log form stays exact
    auto scaled = [&](double u) {
        const double z = abel_z(r, u);
        const double zz_minus_rr = (z - r) * (z + r);
        const double gauss = std::exp(-zz_minus_rr / (4.0 * t));
        const double poly = (m == 1) ? x_over_sinh(z) / (2.0 * t)
                                     : descent2_bracket(t, z) / (4.0 * t * t);
        return std::cosh(0.5 * u) * gauss * poly;
    };
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-290;  // relative-error driven; the scaled integrand can sit far below 1
    cfg.rel_tol = 1e-12;
    const double integral = integrate(scaled, 0.0, U, cfg).value;
    // log of e^{+rho^2 t} (kernel / c_n); the caller applies the spectral factor
    const double log_pre = -0.5 * std::log(t) - r * r / (4.0 * t) +
                           0.5 * (M_LN2 + std::log(std::cosh(r)));
    if (log_form) return log_pre + std::log(integral);
    return std::exp(log_pre) * integral;
}

double even_mass_constant(int n) {
    static std::array<double, 2> cache = {0.0, 0.0};  // n=2, n=4
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    double& slot = cache[(n - 2) / 2];
    if (slot == 0.0) {
        HyperbolicSpace space(n);
        const double gap = std::exp(-space.rho * space.rho);  // t = 1
        auto integrand = [&](double r) {
            return gap * unnormalized_even(n, 1.0, r, false) * volume_density(space, r);
        };
        const double mass = integrate_half_line(integrand, {}, n - 1.0).value;
        slot = 1.0 / mass;
    }
    return slot;
}

}  // namespace

double gaussian_descent(int m, double t, double z) {
    const double gauss = std::exp(-z * z / (4.0 * t));
    if (m == 1) return x_over_sinh(z) / (2.0 * t) * gauss;
    if (m == 2) return descent2_bracket(t, z) / (4.0 * t * t) * gauss;
    throw std::domain_error("gaussian_descent: m in {1, 2}");
}

HeatMethod heat_kernel_method(const HyperbolicSpace& space) {
    return (space.n % 2 == 1) ? HeatMethod::closed_form_odd : HeatMethod::abel_even;
}

double heat_kernel(const HyperbolicSpace& space, double t, double r) {
    if (!(t > 0.0)) throw std::domain_error("heat_kernel: t > 0 required");
    if (r < 0.0) throw std::domain_error("heat_kernel: r >= 0 required");
    switch (space.n) {
        case 3:
            return std::pow(4.0 * M_PI * t, -1.5) * x_over_sinh(r) *
                   std::exp(-t - r * r / (4.0 * t));
        case 5:
            return std::pow(4.0 * M_PI * t, -2.5) * descent2_bracket(t, r) *
                   std::exp(-4.0 * t - r * r / (4.0 * t));
        case 2:
        case 4:
            return even_mass_constant(space.n) * std::exp(-space.rho * space.rho * t) *
                   unnormalized_even(space.n, t, r, false);
        default:
            throw std::domain_error("heat_kernel: supported dimensions are 2..5");
    }
}

double log_heat_kernel_nospectral(const HyperbolicSpace& space, double t, double r) {
    if (!(t > 0.0)) throw std::domain_error("log_heat_kernel: t > 0 required");
    if (r < 0.0) throw std::domain_error("log_heat_kernel: r >= 0 required");
    const double gauss_log = -r * r / (4.0 * t);
    switch (space.n) {
        case 3:
            return -1.5 * std::log(4.0 * M_PI * t) + gauss_log +
                   ((r > 1e-8) ? std::log(r) - log_sinh(r) : std::log(x_over_sinh(r)));
        case 5:
            return -2.5 * std::log(4.0 * M_PI * t) + gauss_log +
                   std::log(descent2_bracket(t, r));
        case 2:
        case 4:
            return std::log(even_mass_constant(space.n)) +
                   unnormalized_even(space.n, t, r, true);
        default:
            throw std::domain_error("log_heat_kernel: supported dimensions are 2..5");
    }
}

double log_heat_kernel(const HyperbolicSpace& space, double t, double r) {
    return log_heat_kernel_nospectral(space, t, r) - space.rho * space.rho * t;
}

double heat_kernel_complex(double root_value, double t, double r) {
    if (!(root_value > 0.0)) throw std::domain_error("heat_kernel_complex: root_value > 0");
    if (!(t > 0.0)) throw std::domain_error("heat_kernel_complex: t > 0 required");
    const double a = root_value;
    return std::pow(4.0 * M_PI * t, -1.5) * std::exp(-a * a * t) * x_over_sinh(a * r) *
           std::exp(-r * r / (4.0 * t));
}

double heat_mass(const HyperbolicSpace& space, double t) {
    auto integrand = [&](double r) {
        return heat_kernel(space, t, r) * volume_density(space, r);
    };
    // density peak near r = 2 rho t for large t, near sqrt(t) for small t
    const double hint = std::max(2.0 * space.rho * t, std::sqrt(t));
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-11;
    return integrate_half_line(integrand, cfg, hint).value;
}

HeatBoundsReport validate_heat_bounds(const HyperbolicSpace& space,
                                      const std::vector<double>& t_grid, double kappa,
                                      int n_r, double spread_bound) {
    HeatBoundsReport rep;
    rep.spread_bound = spread_bound;
    const double rho = space.rho;
    double rmin = 1e300, rmax = 0.0;
    double sum_lt = 0.0, sum_lr = 0.0, sum_lm = 0.0, sum_tt = 0.0, sum_rr = 0.0, sum_tr = 0.0,
           sum_mt = 0.0, sum_mr = 0.0;
    int count = 0;
    for (double t : t_grid) {
        for (int j = 0; j <= n_r; ++j) {
            const double r = kappa * (1.0 + t) * j / n_r;
            const double env = std::pow(t, -0.5 * space.n) *
                               std::pow(1.0 + t, 0.5 * (space.n - 1) - 1.0) * (1.0 + r) *
                               std::exp(-rho * rho * t - rho * r - r * r / (4.0 * t));
            const double ratio = heat_kernel(space, t, r) / env;
            rmin = std::min(rmin, ratio);
            rmax = std::max(rmax, ratio);
            // accumulate least squares for the global bound exponents:
            // log m = -d1 log t + d2 log(1+r), m = h e^{rho^2 t + rho r + r^2/4t}
            const double lt = std::log(t), lr = std::log1p(r);
            const double lm = log_heat_kernel(space, t, r) + rho * rho * t + rho * r +
                              r * r / (4.0 * t);
            sum_lt += lt;
            sum_lr += lr;
            sum_lm += lm;
            sum_tt += lt * lt;
            sum_rr += lr * lr;
            sum_tr += lt * lr;
            sum_mt += lm * lt;
            sum_mr += lm * lr;
            ++count;
        }
    }
    // 2x2 normal equations for lm ~ a + b lt + c lr
    {
        const double n = count;
        const double stt = sum_tt - sum_lt * sum_lt / n;
        const double srr = sum_rr - sum_lr * sum_lr / n;
        const double str = sum_tr - sum_lt * sum_lr / n;
        const double smt = sum_mt - sum_lm * sum_lt / n;
        const double smr = sum_mr - sum_lm * sum_lr / n;
        const double det = stt * srr - str * str;
        if (std::abs(det) > 1e-12) {
            const double b = (smt * srr - smr * str) / det;
            const double c = (smr * stt - smt * str) / det;
            rep.fitted_d1 = -b;
            rep.fitted_d2 = c;
        }
    }
    // Euclidean corner: h * (4 pi t)^{n/2} e^{r^2/4t} -> 1 as (t, r) -> 0
    {
        const double t0 = 1e-4, r0 = 1e-3;
        rep.corner_ratio = heat_kernel(space, t0, r0) * std::pow(4.0 * M_PI * t0, 0.5 * space.n) *
                           std::exp(r0 * r0 / (4.0 * t0));
    }
    rep.ratio_min = rmin;
    rep.ratio_max = rmax;
    rep.pass = rmin > 0.0 && rmax / rmin <= spread_bound;
    return rep;
}

}  // namespace hk
