#pragma once

#include <stdexcept>

namespace hk {

// Real hyperbolic space H^n as a rank-one symmetric space: single positive
// indivisible root with multiplicity n-1, half-sum rho = (n-1)/2, radial
// Laplacian of Jacobi type (alpha, beta) = ((n-2)/2, -1/2).
struct HyperbolicSpace {
    int n;
    double rho;
    double jacobi_alpha;
    double jacobi_beta;
    double omega;  // surface area of the unit (n-1)-sphere
    static constexpr int rank = 1;
    static constexpr int n_pos_indivisible_roots = 1;

    explicit HyperbolicSpace(int dim);
};

struct PolarPoint {
    double r = 0.0;
    PolarPoint() = default;
    explicit PolarPoint(double radius) : r(radius) {
        if (r < 0.0) throw std::domain_error("PolarPoint: r >= 0 required");
    }
};

// omega_{n-1} * sinh^{n-1}(r): radial weight so that
// int_X f dx = int_0^inf f(r) volume_density(r) dr for radial f.
double volume_density(const HyperbolicSpace& space, double r);
double log_volume_density(const HyperbolicSpace& space, double r);

// Elementary spherical function phi_lambda(r), normalized phi_lambda(0) = 1.
// n = 3 uses the closed form sin(lambda r)/(lambda sinh r); other dimensions
// evaluate the one-dimensional polar integral with a doubling Gauss-Legendre
// rule (relative change < 1e-10).
double phi_lambda(const HyperbolicSpace& space, double lambda, double r);

// Integral-representation path, any n; kept as the serial reference the
// closed forms are validated against.
double phi_lambda_integral(const HyperbolicSpace& space, double lambda, double r);

double phi_zero(const HyperbolicSpace& space, double r);

// Two-sided comparison envelope (1 + r) e^{-rho r} for phi_zero.
double phi_zero_envelope(const HyperbolicSpace& space, double r);

// Plancherel density |c(lambda)|^{-2} for the Jacobi c-function
//   c(lambda) = 2^{2 rho - 1} Gamma(n/2) / sqrt(pi) * Gamma(i lambda) / Gamma(i lambda + rho),
// reduced to Gamma-free closed forms per parity of n.
double plancherel_density(const HyperbolicSpace& space, double lambda);

// Constant C_inv with f(r) = C_inv int_0^inf fhat(lambda) phi_lambda(r)
// plancherel_density(lambda) dlambda; pinned by round-trip closure against
// the volume normalization above.
double inversion_constant(const HyperbolicSpace& space);

// Geodesic distance between polar points (r1, 0) and (r2, theta).
double distance_polar(double r1, double r2, double theta);

}  // namespace hk
