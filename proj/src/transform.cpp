#include "hk/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hk/parallel.hpp"
#include "hk/quadrature.hpp"
#include "hk/specfun.hpp"

namespace hk {

namespace {

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

double x_over_sinh(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return x / std::sinh(x);
}

// Simpson weights on uniform odd-count grids, trapezoid otherwise.
std::vector<double> grid_weights(const std::vector<double>& x) {
    const size_t n = x.size();
    if (n < 2) throw std::invalid_argument("grid_weights: need >= 2 points");
    std::vector<double> w(n, 0.0);
    const double h = x[1] - x[0];
    bool uniform = true;
    for (size_t i = 1; i + 1 < n; ++i)
        if (std::abs((x[i + 1] - x[i]) - h) > 1e-9 * h) uniform = false;
    if (uniform && n % 2 == 1) {
        for (size_t i = 0; i < n; ++i)
            w[i] = h / 3.0 * ((i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0));
    } else {
        for (size_t i = 0; i + 1 < n; ++i) {
            const double dh = 0.5 * (x[i + 1] - x[i]);
            w[i] += dh;
            w[i + 1] += dh;
        }
    }
    return w;
}

std::vector<double> natural_spline_d2(const std::vector<double>& x,
                                      const std::vector<double>& y) {
    const size_t n = x.size();
    std::vector<double> d2(n, 0.0), u(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
        const double sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
        const double p = sig * d2[i - 1] + 2.0;
        d2[i] = (sig - 1.0) / p;
        u[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]) - (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
        u[i] = (6.0 * u[i] / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / p;
    }
    for (size_t i = n - 1; i-- > 1;) d2[i] = d2[i] * d2[i + 1] + u[i];
    d2[0] = d2[n - 1] = 0.0;
    return d2;
}

double phi_fast(const HyperbolicSpace& space, double lambda, double r) {
    if (space.n == 3) return sinc(lambda * r) * x_over_sinh(r);
    return phi_lambda(space, lambda, r);
}

}  // namespace

void RadialGridFunction::check() const {
    if (r.size() != v.size() || r.size() < 2)
        throw std::invalid_argument("RadialGridFunction: grid/value size mismatch");
    if (r.front() < 0.0) throw std::invalid_argument("RadialGridFunction: r >= 0 required");
    for (size_t i = 1; i < r.size(); ++i)
        if (!(r[i] > r[i - 1]))
            throw std::invalid_argument("RadialGridFunction: grid must increase strictly");
    for (double x : v)
        if (!std::isfinite(x)) throw std::invalid_argument("RadialGridFunction: non-finite value");
}

void SpectralGridFunction::check() const {
    if (lam.size() != v.size() || lam.empty())
        throw std::invalid_argument("SpectralGridFunction: grid/value size mismatch");
    if (lam.front() < 0.0) throw std::invalid_argument("SpectralGridFunction: lambda >= 0");
    for (size_t i = 1; i < lam.size(); ++i)
        if (!(lam[i] > lam[i - 1]))
            throw std::invalid_argument("SpectralGridFunction: grid must increase strictly");
}

double RadialGridFunction::operator()(double rr) const {
    if (rr <= r.front()) return rr < 0.0 ? 0.0 : v.front();
    if (rr >= r.back()) return rr > r.back() ? 0.0 : v.back();
    const auto it = std::upper_bound(r.begin(), r.end(), rr);
    const size_t hi = size_t(it - r.begin()), lo = hi - 1;
    const double h = r[hi] - r[lo];
    const double a = (r[hi] - rr) / h, b = (rr - r[lo]) / h;
    double out = a * v[lo] + b * v[hi];
    if (interp == Interp::cubic && !spline_d2.empty()) {
        out += ((a * a * a - a) * spline_d2[lo] + (b * b * b - b) * spline_d2[hi]) * h * h / 6.0;
    }
    return out;
}

std::vector<double> uniform_grid(double a, double b, double step) {
    std::vector<double> g;
    const long n = std::lround((b - a) / step);
    g.reserve(n + 1);
    for (long i = 0; i <= n; ++i) g.push_back(a + i * step);
    return g;
}

std::vector<double> default_r_grid() { return uniform_grid(0.0, 10.0, 0.01); }
std::vector<double> default_lambda_grid() { return uniform_grid(0.0, 40.0, 0.02); }

RadialGridFunction make_radial(const HyperbolicSpace& space, std::vector<double> r,
                               std::vector<double> v, Interp interp) {
    RadialGridFunction f;
    f.space = space;
    f.r = std::move(r);
    f.v = std::move(v);
    f.interp = interp;
    f.check();
    if (interp == Interp::cubic) f.spline_d2 = natural_spline_d2(f.r, f.v);
    f.tail_bound = std::abs(f.v.back()) * volume_density(space, f.r.back());
    return f;
}

RadialGridFunction sample_radial(const HyperbolicSpace& space,
                                 const std::function<double(double)>& f,
                                 const std::vector<double>& r_grid, Interp interp) {
    std::vector<double> v(r_grid.size());
    for (size_t i = 0; i < r_grid.size(); ++i) v[i] = f(r_grid[i]);
    return make_radial(space, r_grid, std::move(v), interp);
}

SpectralGridFunction spherical_transform(const RadialGridFunction& f,
                                         const std::vector<double>& lambda_grid) {
    f.check();
    const auto& space = f.space;
    const auto w = grid_weights(f.r);
    const size_t nr = f.r.size(), nl = lambda_grid.size();
    std::vector<double> dens(nr);
    for (size_t i = 0; i < nr; ++i) dens[i] = w[i] * f.v[i] * volume_density(space, f.r[i]);
    SpectralGridFunction out;
    out.space = space;
    out.lam = lambda_grid;
    out.v.assign(nl, 0.0);
    par::for_index(long(nl), [&](long j) {
        const double lambda = lambda_grid[j];
        double s = 0.0;
        for (size_t i = 0; i < nr; ++i) s += dens[i] * phi_fast(space, lambda, f.r[i]);
        out.v[j] = s;
    });
    out.tail_bound = std::abs(f.v.back()) * volume_density(space, f.r.back());
    out.check();
    return out;
}

RadialGridFunction inverse_spherical_transform(const SpectralGridFunction& fhat,
                                               const std::vector<double>& r_grid) {
    fhat.check();
    const auto& space = fhat.space;
    const auto w = grid_weights(fhat.lam);
    const size_t nl = fhat.lam.size(), nr = r_grid.size();
    const double cinv = inversion_constant(space);
    std::vector<double> meas(nl);
    for (size_t j = 0; j < nl; ++j)
        meas[j] = w[j] * fhat.v[j] * plancherel_density(space, fhat.lam[j]);
    std::vector<double> v(nr, 0.0);
    par::for_index(long(nr), [&](long i) {
        double s = 0.0;
        for (size_t j = 0; j < nl; ++j) s += meas[j] * phi_fast(space, fhat.lam[j], r_grid[i]);
        v[i] = cinv * s;
    });
    auto out = make_radial(space, r_grid, std::move(v));
    out.tail_bound = std::abs(fhat.v.back()) * plancherel_density(space, fhat.lam.back());
    return out;
}

double plancherel_norm_sq(const SpectralGridFunction& fhat) {
    return sobolev_norm_sq_spectral(fhat, 0.0);
}

double sobolev_norm_sq_spectral(const SpectralGridFunction& fhat, double sigma) {
    fhat.check();
    const auto& space = fhat.space;
    const auto w = grid_weights(fhat.lam);
    const double rho2 = space.rho * space.rho;
    double s = 0.0;
    for (size_t j = 0; j < fhat.lam.size(); ++j) {
        const double l2 = fhat.lam[j] * fhat.lam[j];
        s += w[j] * std::pow(l2 + rho2, sigma) * fhat.v[j] * fhat.v[j] *
             plancherel_density(space, fhat.lam[j]);
    }
    return inversion_constant(space) * s;
}

SpectralGridFunction apply_multiplier(const SpectralGridFunction& fhat,
                                      const std::function<double(double)>& m) {
    SpectralGridFunction out = fhat;
    for (size_t j = 0; j < out.lam.size(); ++j) out.v[j] = fhat.v[j] * m(fhat.lam[j]);
    return out;
}

RadialGridFunction fractional_laplacian(const RadialGridFunction& f, double sigma,
                                        std::vector<double> lambda_grid) {
    if (sigma < 0.0) throw std::domain_error("fractional_laplacian: sigma >= 0");
    if (lambda_grid.empty()) lambda_grid = default_lambda_grid();
    const double rho2 = f.space.rho * f.space.rho;
    auto fhat = spherical_transform(f, lambda_grid);
    auto ghat = apply_multiplier(
        fhat, [&](double l) { return std::pow(l * l + rho2, sigma); });
    return inverse_spherical_transform(ghat, f.r);
}

RadialGridFunction shifted_fractional(const RadialGridFunction& f, double sigma,
                                      std::vector<double> lambda_grid) {
    if (sigma < 0.0) throw std::domain_error("shifted_fractional: sigma >= 0");
    if (lambda_grid.empty()) lambda_grid = default_lambda_grid();
    auto fhat = spherical_transform(f, lambda_grid);
    auto ghat = apply_multiplier(fhat, [&](double l) { return std::pow(l, sigma); });
    return inverse_spherical_transform(ghat, f.r);
}

double extension_profile(double sigma, double z) {
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::domain_error("extension_profile: sigma in (0,1)");
    if (z <= 0.0) return 1.0;
    if (z < 1e-150) return 1.0;
    return std::pow(2.0, 1.0 - sigma) / gamma_fn(sigma) * std::pow(z, sigma) *
           bessel_k(sigma, z);
}

double extension_profile_deriv(double sigma, double z) {
    if (z <= 0.0) throw std::domain_error("extension_profile_deriv: z > 0");
    return -std::pow(2.0, 1.0 - sigma) / gamma_fn(sigma) * std::pow(z, sigma) *
           bessel_k(std::abs(1.0 - sigma), z);
}

std::vector<ExtensionSlice> extension_solve(const RadialGridFunction& f, double sigma,
                                            const std::vector<double>& y_list,
                                            std::vector<double> lambda_grid) {
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::domain_error("extension_solve: sigma in (0,1)");
    for (double y : y_list)
        if (!(y > 0.0)) throw std::domain_error("extension_solve: y > 0");
    if (lambda_grid.empty()) lambda_grid = default_lambda_grid();
    const auto fhat = spherical_transform(f, lambda_grid);
    const double rho = f.space.rho;
    std::vector<ExtensionSlice> slices;
    slices.reserve(y_list.size());
    for (double y : y_list) {
        auto uhat = apply_multiplier(fhat, [&](double l) {
            return extension_profile(sigma, y * std::hypot(l, rho));
        });
        ExtensionSlice s;
        s.y = y;
        s.profile = inverse_spherical_transform(uhat, f.r);
        slices.push_back(std::move(s));
    }
    return slices;
}

namespace {

// Generalized Richardson elimination at step ratio 2 for known exponents.
double richardson(std::vector<double> g, const std::vector<double>& ladder,
                  double* residual) {
    double last_change = 0.0;
    for (double e : ladder) {
        if (g.size() < 2) break;
        const double f = std::pow(2.0, e);
        std::vector<double> next(g.size() - 1);
        for (size_t k = 0; k + 1 < g.size(); ++k) next[k] = (f * g[k + 1] - g[k]) / (f - 1.0);
        last_change = std::abs(next.back() - g.back());
        g = std::move(next);
    }
    if (residual) *residual = last_change;
    return g.back();
}

std::vector<double> dtn_ladder(double sigma) {
    std::vector<double> e{2.0 - 2.0 * sigma, 2.0, 4.0 - 2.0 * sigma, 4.0};
    std::sort(e.begin(), e.end());
    return e;
}

double dtn_prefactor(double sigma) {
    return -std::pow(2.0, 2.0 * sigma - 1.0) * gamma_fn(sigma) / gamma_fn(1.0 - sigma);
}

}  // namespace

double dtn_scalar(double sigma, double s, NeumannOptions opts) {
    std::vector<double> g(opts.depth);
    for (int k = 0; k < opts.depth; ++k) {
        const double y = opts.y0 * std::pow(2.0, -k);
        g[k] = std::pow(y, 1.0 - 2.0 * sigma) * s * extension_profile_deriv(sigma, y * s);
    }
    return dtn_prefactor(sigma) * richardson(std::move(g), dtn_ladder(sigma), nullptr);
}

RadialGridFunction neumann_limit(const RadialGridFunction& f, double sigma,
                                 std::vector<double> lambda_grid, NeumannOptions opts,
                                 double* max_residual) {
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::domain_error("neumann_limit: sigma in (0,1)");
    if (lambda_grid.empty()) lambda_grid = default_lambda_grid();
    const auto fhat = spherical_transform(f, lambda_grid);
    const double rho = f.space.rho;
    const auto ladder = dtn_ladder(sigma);
    const double pre = dtn_prefactor(sigma);
    SpectralGridFunction nhat = fhat;
    double worst = 0.0;
    for (size_t j = 0; j < fhat.lam.size(); ++j) {
        const double s = std::hypot(fhat.lam[j], rho);
        std::vector<double> g(opts.depth);
        for (int k = 0; k < opts.depth; ++k) {
            const double y = opts.y0 * std::pow(2.0, -k);
            g[k] = std::pow(y, 1.0 - 2.0 * sigma) * s * extension_profile_deriv(sigma, y * s);
        }
        double resid = 0.0;
        nhat.v[j] = pre * richardson(std::move(g), ladder, &resid) * fhat.v[j];
        worst = std::max(worst, resid * std::abs(fhat.v[j]));
    }
    if (max_residual) *max_residual = worst;
    return inverse_spherical_transform(nhat, f.r);
}

double pde_residual(const std::vector<ExtensionSlice>& slices, double sigma) {
    if (slices.size() < 3)
        throw std::invalid_argument("pde_residual: need >= 3 slices with distinct y");
    // sort indices by y, use the middle triple
    std::vector<size_t> idx(slices.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return slices[a].y < slices[b].y; });
    const size_t mid = idx.size() / 2;
    const auto& lo = slices[idx[mid - 1]];
    const auto& ce = slices[idx[mid]];
    const auto& hi = slices[idx[mid + 1]];
    if (lo.y == ce.y || ce.y == hi.y) throw std::invalid_argument("pde_residual: distinct y");
    const auto& space = ce.profile.space;
    const auto& r = ce.profile.r;
    const size_t nr = r.size();
    double num = 0.0, den = 0.0;
    for (size_t i = 2; i + 2 < nr; ++i) {
        const double h1 = r[i] - r[i - 1], h2 = r[i + 1] - r[i];
        const double u0 = ce.profile.v[i];
        // unequal-spacing central differences in r
        const double ur = (ce.profile.v[i + 1] - ce.profile.v[i - 1]) / (h1 + h2);
        const double urr = 2.0 *
                           (h1 * ce.profile.v[i + 1] - (h1 + h2) * u0 + h2 * ce.profile.v[i - 1]) /
                           (h1 * h2 * (h1 + h2));
        const double rr = r[i];
        const double lap = urr + (space.n - 1) / std::tanh(rr) * ur;
        // quadratic fit through the three slices in y
        const double ya = lo.y, yb = ce.y, yc = hi.y;
        const double fa = lo.profile.v[i], fb = u0, fc = hi.profile.v[i];
        const double d1 = (fb - fa) / (yb - ya), d2 = (fc - fb) / (yc - yb);
        const double uyy = 2.0 * (d2 - d1) / (yc - ya);
        const double uy = d1 + uyy * 0.5 * (yb - ya);  // derivative of the fit at yb
        const double res = lap + (1.0 - 2.0 * sigma) / yb * uy + uyy;
        const double wgt = volume_density(space, rr);
        num += res * res * wgt;
        den += lap * lap * wgt;
    }
    if (den == 0.0) return 0.0;
    return std::sqrt(num / den);
}

double sobolev_norm(const RadialGridFunction& f, double sigma) {
    return std::sqrt(sobolev_norm_sq_spectral(spherical_transform(f, default_lambda_grid()),
                                              sigma));
}

double lp_norm(const RadialGridFunction& f, double p) {
    f.check();
    if (std::isinf(p)) {
        double best = 0.0;
        size_t at = 0;
        for (size_t i = 0; i < f.r.size(); ++i)
            if (std::abs(f.v[i]) > best) {
                best = std::abs(f.v[i]);
                at = i;
            }
        // golden refinement on the interpolant around the grid maximizer
        double a = f.r[at > 0 ? at - 1 : 0];
        double b = f.r[std::min(at + 1, f.r.size() - 1)];
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        for (int it = 0; it < 80 && b - a > 1e-12; ++it) {
            if (std::abs(f(x1)) < std::abs(f(x2))) {
                a = x1;
                x1 = x2;
                x2 = a + gr * (b - a);
            } else {
                b = x2;
                x2 = x1;
                x1 = b - gr * (b - a);
            }
        }
        return std::max(best, std::abs(f(0.5 * (a + b))));
    }
    if (!(p >= 1.0)) throw std::domain_error("lp_norm: p >= 1 required");
    const auto w = grid_weights(f.r);
    double s = 0.0;
    for (size_t i = 0; i < f.r.size(); ++i)
        s += w[i] * std::pow(std::abs(f.v[i]), p) * volume_density(f.space, f.r[i]);
    return std::pow(s, 1.0 / p);
}

double weighted_l2(const RadialGridFunction& f, const std::function<double(double)>& w) {
    f.check();
    const auto gw = grid_weights(f.r);
    double s = 0.0;
    for (size_t i = 0; i < f.r.size(); ++i)
        s += gw[i] * f.v[i] * f.v[i] * w(f.r[i]) * volume_density(f.space, f.r[i]);
    return s;
}

}  // namespace hk
