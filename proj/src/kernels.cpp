#include "hk/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "hk/quadrature.hpp"
#include "hk/specfun.hpp"

namespace hk {

KernelSpec KernelSpec::heat_spec(double t) {
    KernelSpec s;
    s.family = KernelFamily::heat;
    s.t = t;
    return s;
}
KernelSpec KernelSpec::poisson(double sigma, double y) {
    KernelSpec s;
    s.family = KernelFamily::poisson;
    s.sigma = sigma;
    s.y = y;
    return s;
}
KernelSpec KernelSpec::neg_poisson(double sigma, double y) {
    KernelSpec s;
    s.family = KernelFamily::neg_poisson;
    s.sigma = sigma;
    s.y = y;
    return s;
}
KernelSpec KernelSpec::riesz_zero(double alpha) {
    KernelSpec s;
    s.family = KernelFamily::riesz_zero;
    s.alpha = alpha;
    return s;
}
KernelSpec KernelSpec::bgr(double sigma) {
    KernelSpec s;
    s.family = KernelFamily::bgr;
    s.sigma = sigma;
    return s;
}

void KernelSpec::validate(const HyperbolicSpace& space) const {
    switch (family) {
        case KernelFamily::heat:
            if (!(t > 0.0)) throw std::domain_error("KernelSpec: heat requires t > 0");
            break;
        case KernelFamily::poisson:
        case KernelFamily::neg_poisson:
            if (!(sigma > 0.0 && sigma < 1.0))
                throw std::domain_error("KernelSpec: sigma in (0,1) required");
            if (!(y > 0.0)) throw std::domain_error("KernelSpec: y > 0 required");
            break;
        case KernelFamily::riesz_zero:
            break;  // any real order; the r = 0 divergence is checked at evaluation
        case KernelFamily::bgr:
            if (!(sigma > 0.0 && sigma < std::min(3.0, double(space.n))))
                throw std::domain_error("KernelSpec: bgr requires 0 < sigma < min(3, n)");
            break;
    }
}

std::string KernelSpec::family_tag() const {
    switch (family) {
        case KernelFamily::heat: return "heat";
        case KernelFamily::poisson: return "poisson";
        case KernelFamily::neg_poisson: return "neg_poisson";
        case KernelFamily::riesz_zero: return "riesz_zero";
        case KernelFamily::bgr: return "bgr";
    }
    return "?";
}

double log_subordinate(const HyperbolicSpace& space, double r, double beta, double p,
                       double shift) {
    const double rho2 = space.rho * space.rho;
    if (shift > rho2 + 1e-12)
        throw std::domain_error("log_subordinate: shift beyond the spectral bottom");
    const double decay = rho2 - shift;
    const double b_eff = beta + 0.25 * r * r;
    if (b_eff <= 0.0 && p - 0.5 * space.n >= 0.0)
        throw std::domain_error("log_subordinate: integral diverges at t -> 0");
    auto log_integrand = [&](double u) -> double {
        const double t = std::exp(u);
        if (t == 0.0 || !std::isfinite(t)) return -INFINITY;
        double v = log_heat_kernel_nospectral(space, t, r) - decay * t + p * u;
        if (beta > 0.0) v -= beta / t;
        return std::isfinite(v) ? v : -INFINITY;
    };
    // peak location of exp(-decay t - b_eff/t + ...)
    double t_star;
    if (decay > 1e-12 && b_eff > 0.0)
        t_star = std::sqrt(b_eff / decay);
    else if (b_eff > 0.0)
        t_star = std::sqrt(b_eff / std::max(1.0, 0.5 * space.n - p + 1.5));
    else
        t_star = std::max(1.0, std::abs(p)) / std::max(decay, 1e-2);
    double u0 = std::log(std::max(t_star, 1e-12));

    const double step = 0.5;
    double m = log_integrand(u0);
    auto scan = [&](double dir) {
        double u = u0;
        int quiet = 0;
        while (std::abs(u - u0) < 700.0) {
            u += dir * step;
            const double v = log_integrand(u);
            if (v > m) m = v;
            if (v < m - 50.0)
                ++quiet;
            else
                quiet = 0;
            if (quiet >= 5 && std::abs(u - u0) > 10.0) break;
        }
        return u;
    };
    const double ulo = scan(-1.0), uhi = scan(+1.0);
    if (!std::isfinite(m)) return -INFINITY;
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-290;
    cfg.rel_tol = 1e-11;
    const double val = integrate([&](double u) { return std::exp(log_integrand(u) - m); },
                                 ulo, uhi, cfg)
                           .value;
    return m + std::log(val);
}

double poisson_kernel(const HyperbolicSpace& space, double sigma, double y, double r) {
    KernelSpec::poisson(sigma, y).validate(space);
    const double lg = 2.0 * sigma * std::log(y) - sigma * std::log(4.0) - log_gamma_fn(sigma);
    return std::exp(lg + log_subordinate(space, r, 0.25 * y * y, -sigma));
}

double poisson_symbol(const HyperbolicSpace& space, double sigma, double y, double lambda) {
    KernelSpec::poisson(sigma, y).validate(space);
    const double s = std::hypot(lambda, space.rho);
    const double z = y * s;
    // z^sigma K_sigma(z) -> 2^{sigma-1} Gamma(sigma) as z -> 0
    if (z < 1e-150) return 1.0;
    return std::pow(2.0, 1.0 - sigma) / gamma_fn(sigma) * std::pow(z, sigma) * bessel_k(sigma, z);
}

double neg_poisson_kernel(const HyperbolicSpace& space, double sigma, double y, double r) {
    KernelSpec::neg_poisson(sigma, y).validate(space);
    const double coef =
        std::pow(4.0, sigma) * std::pow(y, -2.0 * sigma) / gamma_fn(-sigma);  // < 0
    return coef * std::exp(log_subordinate(space, r, 0.25 * y * y, sigma));
}

double neg_poisson_symbol(const HyperbolicSpace& space, double sigma, double y, double lambda) {
    KernelSpec::neg_poisson(sigma, y).validate(space);
    const double s = std::hypot(lambda, space.rho);
    const double z = y * s;
    return std::pow(2.0, 1.0 + sigma) / gamma_fn(-sigma) * std::pow(z, -sigma) *
           bessel_k(sigma, z);
}

double riesz_zero_kernel(const HyperbolicSpace& space, double a, double r) {
    if (r == 0.0 && a >= -0.5 * space.n)
        throw std::domain_error("riesz_zero_kernel: diverges at r = 0 for a >= -n/2");
    return std::exp(log_subordinate(space, r, 0.0, -a));
}

double riesz_zero_symbol(const HyperbolicSpace& space, double a, double lambda) {
    if (!(a < 0.0)) throw std::domain_error("riesz_zero_symbol: requires a < 0");
    const double s2 = lambda * lambda + space.rho * space.rho;
    return gamma_fn(-a) * std::pow(s2, a);
}

double bgr_kernel(const HyperbolicSpace& space, double sigma, double r) {
    KernelSpec::bgr(sigma).validate(space);
    if (r <= 0.0) throw std::domain_error("bgr_kernel: diverges at r = 0");
    return std::exp(-log_gamma_fn(0.5 * sigma) +
                    log_subordinate(space, r, 0.0, 0.5 * sigma, space.rho * space.rho));
}

double kernel_eval(const HyperbolicSpace& space, const KernelSpec& spec, double r) {
    spec.validate(space);
    switch (spec.family) {
        case KernelFamily::heat: return heat_kernel(space, spec.t, r);
        case KernelFamily::poisson: return poisson_kernel(space, spec.sigma, spec.y, r);
        case KernelFamily::neg_poisson:
            return neg_poisson_kernel(space, spec.sigma, spec.y, r);
        case KernelFamily::riesz_zero: return riesz_zero_kernel(space, spec.alpha, r);
        case KernelFamily::bgr: return bgr_kernel(space, spec.sigma, r);
    }
    throw std::logic_error("kernel_eval: unknown family");
}

double log_abs_kernel_eval(const HyperbolicSpace& space, const KernelSpec& spec, double r) {
    spec.validate(space);
    switch (spec.family) {
        case KernelFamily::heat: return log_heat_kernel(space, spec.t, r);
        case KernelFamily::poisson:
            return 2.0 * spec.sigma * std::log(spec.y) - spec.sigma * std::log(4.0) -
                   log_gamma_fn(spec.sigma) +
                   log_subordinate(space, r, 0.25 * spec.y * spec.y, -spec.sigma);
        case KernelFamily::neg_poisson:
            return std::log(std::pow(4.0, spec.sigma) * std::pow(spec.y, -2.0 * spec.sigma) /
                            -gamma_fn(-spec.sigma)) +
                   log_subordinate(space, r, 0.25 * spec.y * spec.y, spec.sigma);
        case KernelFamily::riesz_zero:
            if (r == 0.0 && spec.alpha >= -0.5 * space.n)
                throw std::domain_error("riesz_zero: diverges at r = 0");
            return log_subordinate(space, r, 0.0, -spec.alpha);
        case KernelFamily::bgr:
            return -log_gamma_fn(0.5 * spec.sigma) +
                   log_subordinate(space, r, 0.0, 0.5 * spec.sigma, space.rho * space.rho);
    }
    throw std::logic_error("log_abs_kernel_eval: unknown family");
}

namespace {
double x_over_sinh(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return x / std::sinh(x);
}
}  // namespace

double poisson_h3_shape(double sigma, double y, double r) {
    const double R = std::hypot(r, y);
    return x_over_sinh(r) * std::pow(R, -sigma - 1.5) * bessel_k(sigma + 1.5, R);
}

double bgr_h3_closed(double sigma, double r) {
    return std::pow(4.0 * M_PI, -1.5) * gamma_fn(0.5 * (3.0 - sigma)) / gamma_fn(0.5 * sigma) *
           x_over_sinh(r) * std::pow(0.5 * r, sigma - 3.0);
}

double riesz_h3_closed(double a, double r) {
    return std::pow(4.0 * M_PI, -1.5) * x_over_sinh(r) * 2.0 *
           std::pow(0.5 * r, -1.5 - a) * bessel_k(std::abs(1.5 + a), r);
}

double fitted_power_tail(const std::function<double(double)>& log_p, double r_fit,
                         double tail_exp) {
    // fit p(r) r^{tail_exp} = c0 + c1/r + c2/r^2 + c3/r^3 on [r_fit/2, r_fit]
    constexpr int kNodes = 12, kTerms = 4;
    double ata[kTerms][kTerms] = {};
    double atb[kTerms] = {};
    for (int i = 0; i < kNodes; ++i) {
        const double r = 0.5 * r_fit * std::pow(2.0, double(i) / (kNodes - 1));
        const double g = std::exp(log_p(r) + tail_exp * std::log(r));
        double basis[kTerms];
        basis[0] = 1.0;
        for (int j = 1; j < kTerms; ++j) basis[j] = basis[j - 1] / r;
        for (int a = 0; a < kTerms; ++a) {
            for (int b = 0; b < kTerms; ++b) ata[a][b] += basis[a] * basis[b];
            atb[a] += basis[a] * g;
        }
    }
    // solve the 4x4 normal equations by Gaussian elimination with pivoting
    double c[kTerms];
    {
        double m[kTerms][kTerms + 1];
        for (int a = 0; a < kTerms; ++a) {
            for (int b = 0; b < kTerms; ++b) m[a][b] = ata[a][b];
            m[a][kTerms] = atb[a];
        }
        for (int col = 0; col < kTerms; ++col) {
            int piv = col;
            for (int rw = col + 1; rw < kTerms; ++rw)
                if (std::abs(m[rw][col]) > std::abs(m[piv][col])) piv = rw;
            std::swap(m[col], m[piv]);
            for (int rw = col + 1; rw < kTerms; ++rw) {
                const double f = m[rw][col] / m[col][col];
                for (int b = col; b <= kTerms; ++b) m[rw][b] -= f * m[col][b];
            }
        }
        for (int rw = kTerms - 1; rw >= 0; --rw) {
            double s = m[rw][kTerms];
            for (int b = rw + 1; b < kTerms; ++b) s -= m[rw][b] * c[b];
            c[rw] = s / m[rw][rw];
        }
    }
    // int_{r_fit}^inf r^{-tail_exp - j} dr, requires tail_exp > 1
    if (tail_exp <= 1.0) throw std::domain_error("fitted_power_tail: tail_exp > 1 required");
    double tail = 0.0;
    for (int j = 0; j < kTerms; ++j)
        tail += c[j] * std::pow(r_fit, 1.0 - tail_exp - j) / (tail_exp + j - 1.0);
    return tail;
}

double kernel_mass(const HyperbolicSpace& space, const KernelSpec& spec) {
    spec.validate(space);
    if (spec.family == KernelFamily::heat) return heat_mass(space, spec.t);
    if (spec.family != KernelFamily::poisson)
        throw std::invalid_argument("kernel_mass: defined for heat and poisson families");
    auto log_p = [&](double r) {
        return log_abs_kernel_eval(space, spec, r) + log_volume_density(space, r);
    };
    const double r_fit = 300.0;
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-12;
    cfg.rel_tol = 1e-10;
    cfg.max_subdivisions = 20000;
    const double head = integrate([&](double r) { return std::exp(log_p(r)); }, 0.0, 2.0, cfg).value;
    const double body = integrate([&](double v) {
                            const double r = std::exp(v);
                            return std::exp(log_p(r)) * r;
                        },
                        std::log(2.0), std::log(r_fit), cfg)
                            .value;
    const double tail = fitted_power_tail(log_p, r_fit, 1.0 + spec.sigma);
    return head + body + tail;
}

std::vector<EstimateReport> validate_kernel_estimate(
    const HyperbolicSpace& space, const KernelSpec& spec, const std::vector<double>& r_grid,
    const std::vector<double>& y_grid, double spread_bound, double near_exponent_shift) {
    spec.validate(space);
    if (r_grid.empty()) throw std::invalid_argument("validate_kernel_estimate: empty grid");
    const double n = space.n, rho = space.rho;
    const double l_half = 0.5;  // rank 1
    double sig = 0.0;           // signed subordination order in the envelope
    bool uses_y = false;
    switch (spec.family) {
        case KernelFamily::poisson: sig = spec.sigma; uses_y = true; break;
        case KernelFamily::neg_poisson: sig = -spec.sigma; uses_y = true; break;
        case KernelFamily::riesz_zero: sig = spec.alpha; break;
        case KernelFamily::bgr: break;
        case KernelFamily::heat:
            throw std::invalid_argument("validate_kernel_estimate: use validate_heat_bounds");
    }
    std::vector<double> ys = uses_y ? y_grid : std::vector<double>{0.0};
    if (uses_y && ys.empty()) throw std::invalid_argument("validate_kernel_estimate: empty y grid");

    EstimateReport near, far;
    near.regime = "near";
    far.regime = "far";
    near.spread_bound = far.spread_bound = spread_bound;
    near.ratio_min = far.ratio_min = 1e300;
    near.ratio_max = far.ratio_max = -1e300;
    int n_near = 0, n_far = 0;
    for (double y : ys) {
        for (double r : r_grid) {
            if (!uses_y && r <= 0.0) continue;
            const double rr = r * r + y * y;
            const double R = std::sqrt(rr);
            double log_env;
            const bool is_near = rr < 1.0;
            if (spec.family == KernelFamily::bgr) {
                log_env = is_near ? (spec.sigma - n) * std::log(r)
                                  : (spec.sigma - 3.0) * std::log(r) +
                                        std::log(phi_zero(space, r));
            } else if (!uses_y) {  // riesz_zero, the paper's P_0^alpha estimates
                log_env = is_near ? (-n - 2.0 * sig) * std::log(r)
                                  : (-l_half - 0.5 - sig - 1.0) * std::log(r) +
                                        std::log(phi_zero(space, r)) - rho * r;
            } else {
                const double y_pow = 2.0 * sig * std::log(y);
                log_env = is_near
                              ? y_pow + (-0.5 * n - sig) * std::log(rr)
                                    - std::log(std::abs(gamma_fn(sig)))
                              : y_pow - sig * std::log(4.0) +
                                    (-l_half - 0.5 - sig - 1.0) * std::log(R) +
                                    std::log(phi_zero(space, r)) - rho * R -
                                    std::log(std::abs(gamma_fn(sig)));
            }
            if (is_near && near_exponent_shift != 0.0) {
                log_env += near_exponent_shift * std::log(uses_y ? rr : r);
            }
            KernelSpec pt = spec;
            if (uses_y) pt.y = y;
            const double ratio = std::exp(log_abs_kernel_eval(space, pt, r) - log_env);
            auto& rep = is_near ? near : far;
            (is_near ? n_near : n_far)++;
            rep.ratio_min = std::min(rep.ratio_min, ratio);
            rep.ratio_max = std::max(rep.ratio_max, ratio);
        }
    }
    std::vector<EstimateReport> out;
    for (auto* rep : {&near, &far}) {
        if ((rep == &near && n_near == 0) || (rep == &far && n_far == 0)) continue;
        rep->grid_note = spec.family_tag() + " n=" + std::to_string(space.n);
        rep->pass = rep->ratio_min > 0.0 && rep->ratio_max / rep->ratio_min <= spread_bound;
        out.push_back(*rep);
    }
    return out;
}

RadialKernelCdf::RadialKernelCdf(std::function<double(double)> kernel, double near_exp,
                                 double d_max)
    : near_exp_(near_exp), d_min_(1e-4), d_max_(d_max) {
    const int cells = 900;
    logd_.resize(cells + 1);
    c_.resize(cells + 1);
    const double l0 = std::log(d_min_), l1 = std::log(d_max_);
    for (int i = 0; i <= cells; ++i) logd_[i] = l0 + (l1 - l0) * i / cells;
    c_[0] = 0.0;
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-290;
    cfg.rel_tol = 1e-9;
    cfg.max_subdivisions = 60;
    for (int i = 0; i < cells; ++i) {
        const double a = std::exp(logd_[i]), b = std::exp(logd_[i + 1]);
        c_[i + 1] = c_[i] + integrate([&](double s) { return kernel(s) * std::sinh(s); }, a, b,
                                      cfg)
                                .value;
    }
    near_amp_ = kernel(d_min_) * std::sinh(d_min_) * std::pow(d_min_, near_exp_ - 1.0);
}

double RadialKernelCdf::cdf(double d) const {
    if (d <= d_min_) {
        // k(s) sinh s ~ A s^{1 - e}; antiderivative A s^{2-e}/(2-e)
        const double e = near_exp_;
        if (std::abs(e - 2.0) < 1e-12) return near_amp_ * std::log(d / d_min_);
        return near_amp_ * (std::pow(d, 2.0 - e) - std::pow(d_min_, 2.0 - e)) / (2.0 - e);
    }
    if (d >= d_max_) return c_.back();
    const double ld = std::log(d);
    const double l0 = logd_.front(), l1 = logd_.back();
    const int cells = int(logd_.size()) - 1;
    int i = int((ld - l0) / (l1 - l0) * cells);
    i = std::clamp(i, 1, cells - 1);
    // 3-point Lagrange in log d
    const double xa = logd_[i - 1], xb = logd_[i], xc = logd_[i + 1];
    const double fa = c_[i - 1], fb = c_[i], fc = c_[i + 1];
    const double wa = (ld - xb) * (ld - xc) / ((xa - xb) * (xa - xc));
    const double wb = (ld - xa) * (ld - xc) / ((xb - xa) * (xb - xc));
    const double wc = (ld - xa) * (ld - xb) / ((xc - xa) * (xc - xb));
    return fa * wa + fb * wb + fc * wc;
}

double RadialKernelCdf::diff(double a, double b) const {
    if (a > b) throw std::invalid_argument("RadialKernelCdf::diff: a <= b required");
    return cdf(b) - cdf(a);
}

double convolve_radial_at(const HyperbolicSpace& space, const std::function<double(double)>& f,
                          double f_support, const RadialKernelCdf& kernel_cdf, double r1) {
    if (space.n != 3)
        throw std::invalid_argument("convolve_radial_at: two-point reduction implemented for n=3");
    if (!(r1 > 1e-8)) throw std::domain_error("convolve_radial_at: r1 > 0 required");
    QuadratureConfig cfg;
    cfg.abs_tol = 1e-290;
    cfg.rel_tol = 1e-9;
    cfg.max_subdivisions = 8000;
    auto g = [&](double r2) {
        return f(r2) * std::sinh(r2) * kernel_cdf.diff(std::abs(r1 - r2), r1 + r2);
    };
    double total = 0.0;
    if (r1 < f_support) {  // split at the diagonal
        total += integrate(g, 0.0, r1, cfg).value;
        total += integrate(g, r1, f_support, cfg).value;
    } else {
        total = integrate(g, 0.0, f_support, cfg).value;
    }
    return 2.0 * M_PI / std::sinh(r1) * total;
}

}  // namespace hk
