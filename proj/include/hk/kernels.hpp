#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hk/geometry.hpp"
#include "hk/heat.hpp"

namespace hk {

enum class KernelFamily { heat, poisson, neg_poisson, riesz_zero, bgr };

// Tagged kernel description. Parameter windows:
//   poisson / neg_poisson : sigma in (0,1), y > 0
//   riesz_zero            : order a, kernel P_0^a = int h_t t^{-1-a} dt (any real a;
//                           r = 0 only when a < -n/2)
//   bgr                   : 0 < sigma < min(3, n)
struct KernelSpec {
    KernelFamily family;
    double t = 0.0;
    double sigma = 0.0;
    double y = 0.0;
    double alpha = 0.0;

    static KernelSpec heat_spec(double t);
    static KernelSpec poisson(double sigma, double y);
    static KernelSpec neg_poisson(double sigma, double y);
    static KernelSpec riesz_zero(double alpha);
    static KernelSpec bgr(double sigma);
    void validate(const HyperbolicSpace& space) const;
    std::string family_tag() const;
};

// log of int_0^inf h_t(r) e^{-beta/t} e^{shift t} t^{p-1} dt, evaluated in log
// space so far-field values well below double underflow stay usable.
double log_subordinate(const HyperbolicSpace& space, double r, double beta, double p,
                       double shift = 0.0);

// --- subordinated kernels ---------------------------------------------------

// P_y^sigma(r) = y^{2 sigma} / (4^sigma Gamma(sigma)) int h_t(r) e^{-y^2/4t} t^{-1-sigma} dt
double poisson_kernel(const HyperbolicSpace& space, double sigma, double y, double r);

// spherical transform of P_y^sigma: (2^{1-sigma}/Gamma(sigma)) (y s)^sigma K_sigma(y s),
// s = sqrt(lambda^2 + rho^2); in (0, 1], -> 1 as y s -> 0.
double poisson_symbol(const HyperbolicSpace& space, double sigma, double y, double lambda);

// P_y^{-sigma} <= 0 (the 1/Gamma(-sigma) sign is applied after the quadrature).
double neg_poisson_kernel(const HyperbolicSpace& space, double sigma, double y, double r);
double neg_poisson_symbol(const HyperbolicSpace& space, double sigma, double y, double lambda);

// P_0^a(r) = int h_t(r) t^{-1-a} dt. a > 0 is the Riesz-at-zero kernel
// (diverges at r = 0); a < 0 is the ground-state weight P_0^{-|a|}.
double riesz_zero_kernel(const HyperbolicSpace& space, double a, double r);

// spherical transform Gamma(-a) (lambda^2 + rho^2)^{a}, valid for a < 0.
double riesz_zero_symbol(const HyperbolicSpace& space, double a, double lambda);

// Bessel-Green-Riesz kernel of (-Delta - rho^2)^{-sigma/2}:
//   (1/Gamma(sigma/2)) int e^{rho^2 t} h_t(r) t^{sigma/2 - 1} dt,  0 < sigma < min(3, n).
double bgr_kernel(const HyperbolicSpace& space, double sigma, double r);

double kernel_eval(const HyperbolicSpace& space, const KernelSpec& spec, double r);
double log_abs_kernel_eval(const HyperbolicSpace& space, const KernelSpec& spec, double r);

// --- H^3 closed forms (oracles; single constant normalized at a reference point)

// shape of P_y^sigma on H^3: (r/sinh r) R^{-sigma-3/2} K_{sigma+3/2}(R), R = sqrt(r^2+y^2)
double poisson_h3_shape(double sigma, double y, double r);
// k_sigma on H^3: (4 pi)^{-3/2} Gamma((3-sigma)/2)/Gamma(sigma/2) (r/sinh r) (r/2)^{sigma-3}
double bgr_h3_closed(double sigma, double r);
// P_0^a on H^3: (4 pi)^{-3/2} (r/sinh r) 2 (r/2)^{-3/2-a} K_{|3/2+a|}(r)
double riesz_h3_closed(double a, double r);

// --- mass and far tails -----------------------------------------------------

// int_0^inf K(r) volume_density(r) dr. Poisson-type kernels carry an
// r^{-1-sigma} mass tail; the integral is cut at r_fit and completed with a
// fitted expansion  p(r) = r^{-tail_exp} (c0 + c1/r + c2/r^2 + c3/r^3).
double kernel_mass(const HyperbolicSpace& space, const KernelSpec& spec);

// Tail completion helper (exposed for the convolution mass check):
// fits log_p samples on [r_fit/2, r_fit] and returns int_{r_fit}^inf p.
double fitted_power_tail(const std::function<double(double)>& log_p, double r_fit,
                         double tail_exp);

// --- two-sided estimate reports ----------------------------------------------

struct EstimateReport {
    std::string grid_note;
    std::string regime;  // "near" (r^2+y^2 < 1) or "far"
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    double spread_bound = 0.0;
    bool pass = false;
};

// Ratios kernel/envelope in both regimes of the two-sided estimates.
// near_exponent_shift perturbs the near-regime power (negative-control hook).
std::vector<EstimateReport> validate_kernel_estimate(
    const HyperbolicSpace& space, const KernelSpec& spec, const std::vector<double>& r_grid,
    const std::vector<double>& y_grid, double spread_bound = 10.0,
    double near_exponent_shift = 0.0);

// --- radial two-point machinery (n = 3) --------------------------------------

// Cumulative C(d) = int_{d_min}^d k(s) sinh(s) ds for a radial kernel k with a
// power singularity k ~ A d^{-near_exp} at 0. Below the table the closed-form
// asymptotic continuation is used. Supports the polar reduction
//   int_X g k(d(x, z)) dz = (2 pi / sinh r1) int g(r2) sinh r2 [C(r1+r2) - C(|r1-r2|)] dr2.
class RadialKernelCdf {
  public:
    RadialKernelCdf(std::function<double(double)> kernel, double near_exp, double d_max);
    double diff(double a, double b) const;  // C(b) - C(a), 0 <= a <= b
  private:
    double cdf(double d) const;
    std::vector<double> logd_, c_;
    double near_amp_ = 0.0, near_exp_ = 0.0, d_min_ = 0.0, d_max_ = 0.0;
};

// (f * k)(r1) for radial f (callable on [0, f_support]) on H^3.
double convolve_radial_at(const HyperbolicSpace& space, const std::function<double(double)>& f,
                          double f_support, const RadialKernelCdf& kernel_cdf, double r1);

}  // namespace hk
