#pragma once

#include <functional>
#include <vector>

#include "hk/geometry.hpp"

namespace hk {

enum class Interp { linear, cubic };

// Samples of a radial function on a strictly increasing r-grid (starting at or
// near 0). Evaluation interpolates (natural cubic spline by default) and
// returns 0 beyond the grid.
struct RadialGridFunction {
    HyperbolicSpace space{3};
    std::vector<double> r;
    std::vector<double> v;
    Interp interp = Interp::cubic;
    double tail_bound = 0.0;  // |f(R)| * density(R) at the truncation radius

    double operator()(double rr) const;
    void check() const;
    std::vector<double> spline_d2;  // filled by make_radial for cubic interpolation
};

struct SpectralGridFunction {
    HyperbolicSpace space{3};
    std::vector<double> lam;  // lambda >= 0, strictly increasing
    std::vector<double> v;
    double tail_bound = 0.0;

    void check() const;
};

struct ExtensionSlice {
    double y = 0.0;
    RadialGridFunction profile;
};

std::vector<double> uniform_grid(double a, double b, double step);
std::vector<double> default_r_grid();       // [0, 10] step 0.01
std::vector<double> default_lambda_grid();  // [0, 40] step 0.02

RadialGridFunction make_radial(const HyperbolicSpace& space, std::vector<double> r,
                               std::vector<double> v, Interp interp = Interp::cubic);
RadialGridFunction sample_radial(const HyperbolicSpace& space,
                                 const std::function<double(double)>& f,
                                 const std::vector<double>& r_grid,
                                 Interp interp = Interp::cubic);

// fhat(lambda) = int_0^inf f(r) phi_lambda(r) volume_density(r) dr over the
// grid support (Simpson weights on uniform grids). The truncation tail bound
// |f(R)| density(R) is recorded on the result.
SpectralGridFunction spherical_transform(const RadialGridFunction& f,
                                         const std::vector<double>& lambda_grid);

// f(r) = C_inv int_0^inf fhat(lambda) phi_lambda(r) plancherel(lambda) dlambda.
RadialGridFunction inverse_spherical_transform(const SpectralGridFunction& fhat,
                                               const std::vector<double>& r_grid);

// Plancherel pairing: ||f||_2^2 = C_pl int |fhat|^2 plancherel dlambda.
double plancherel_norm_sq(const SpectralGridFunction& fhat);

// int (lambda^2 + rho^2)^sigma |fhat|^2 dmu; sigma = 0 reduces to Plancherel.
double sobolev_norm_sq_spectral(const SpectralGridFunction& fhat, double sigma);

// Spectral multiplier application on the grid.
SpectralGridFunction apply_multiplier(const SpectralGridFunction& fhat,
                                      const std::function<double(double)>& m);

// (-Delta)^sigma via the multiplier (lambda^2 + rho^2)^sigma.
RadialGridFunction fractional_laplacian(const RadialGridFunction& f, double sigma,
                                        std::vector<double> lambda_grid = {});

// (-Delta - rho^2)^{sigma/2} via the multiplier lambda^sigma.
RadialGridFunction shifted_fractional(const RadialGridFunction& f, double sigma,
                                      std::vector<double> lambda_grid = {});

// u(., y) = f * P_y^sigma computed spectrally: uhat = fhat * theta_sigma(y s).
std::vector<ExtensionSlice> extension_solve(const RadialGridFunction& f, double sigma,
                                            const std::vector<double>& y_list,
                                            std::vector<double> lambda_grid = {});

// Poisson y-profile theta_sigma(z) = 2^{1-sigma}/Gamma(sigma) z^sigma K_sigma(z)
// and its z-derivative -2^{1-sigma}/Gamma(sigma) z^sigma K_{1-sigma}(z).
double extension_profile(double sigma, double z);
double extension_profile_deriv(double sigma, double z);

struct NeumannOptions {
    double y0 = 0.2;
    int depth = 5;  // y_k = y0 2^{-k}, k = 0..depth-1
};

// Dirichlet-to-Neumann limit -2^{2 sigma - 1} Gamma(sigma)/Gamma(1-sigma)
//   lim_{y->0} y^{1-2 sigma} du/dy,
// extrapolated per lambda with the exponent ladder {2-2sigma, 2, 4-2sigma};
// converges to (-Delta)^sigma f. max_residual reports the last elimination step.
RadialGridFunction neumann_limit(const RadialGridFunction& f, double sigma,
                                 std::vector<double> lambda_grid = {},
                                 NeumannOptions opts = {}, double* max_residual = nullptr);

// Scalar Dirichlet-to-Neumann check at spectral point s: extrapolates the same
// limit for the profile theta_sigma(y s); exact value is s^{2 sigma}.
double dtn_scalar(double sigma, double s, NeumannOptions opts = {});

// Finite-difference residual of Delta u + (1-2 sigma)/y u_y + u_yy on the
// middle slice, relative to ||Delta u||_2. Requires >= 3 slices.
double pde_residual(const std::vector<ExtensionSlice>& slices, double sigma);

double sobolev_norm(const RadialGridFunction& f, double sigma);
double lp_norm(const RadialGridFunction& f, double p);  // p = INFINITY allowed
double weighted_l2(const RadialGridFunction& f, const std::function<double(double)>& w);

}  // namespace hk
