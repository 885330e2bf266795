#pragma once

#include <vector>

#include "hk/geometry.hpp"

namespace hk {

enum class HeatMethod { closed_form_odd, abel_even, complex_formula };

// Heat kernel h_t(r) on H^n, n in {2,3,4,5}. Odd n by closed form (the
// descent operator applied to the Euclidean Gaussian), even n by the Abel
// integral over the (n+1)-dimensional closed form. All constants are fixed
// by unit mass int h_t dx = 1.
double heat_kernel(const HyperbolicSpace& space, double t, double r);

// log h_t(r); usable far beyond the underflow range of heat_kernel.
double log_heat_kernel(const HyperbolicSpace& space, double t, double r);

// log of e^{rho^2 t} h_t(r), i.e. the heat log without the spectral-gap
// factor. Lets subordination integrands with e^{shift t} weights combine the
// exponentials exactly instead of cancelling two huge terms.
double log_heat_kernel_nospectral(const HyperbolicSpace& space, double t, double r);

HeatMethod heat_kernel_method(const HyperbolicSpace& space);

// Rank-one complex-group model: single positive root of multiplicity 2 with
// root value a, so n = 3 and |rho| = a.
//   h_t(r) = (4 pi t)^{-3/2} e^{-a^2 t} (a r / sinh(a r)) e^{-r^2/(4t)}.
// For a = 1 this coincides with heat_kernel on H^3.
double heat_kernel_complex(double root_value, double t, double r);

// (-(1/sinh z) d/dz)^m applied to e^{-z^2/(4t)}, m in {1, 2}; the building
// block shared by the odd closed forms and the even-n Abel integrals.
double gaussian_descent(int m, double t, double z);

// Total mass int_0^inf h_t(r) volume_density(r) dr by adaptive quadrature.
double heat_mass(const HyperbolicSpace& space, double t);

struct HeatBoundsReport {
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    double corner_ratio = 0.0;  // small-(t,r) Euclidean corner h*(4 pi t)^{n/2} e^{r^2/4t}
    double fitted_d1 = 0.0;     // global upper bound exponents in t^{-d1}(1+r)^{d2}
    double fitted_d2 = 0.0;
    double spread_bound = 0.0;
    bool pass = false;
};

// Ratio of h_t(r) to the two-sided envelope
//   t^{-n/2} (1+t)^{(n-1)/2 - 1} (1+r) e^{-rho^2 t - rho r - r^2/(4t)}
// over a grid with r <= kappa (1+t).
HeatBoundsReport validate_heat_bounds(const HyperbolicSpace& space,
                                      const std::vector<double>& t_grid, double kappa,
                                      int n_r = 24, double spread_bound = 10.0);

}  // namespace hk
