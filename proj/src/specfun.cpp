#include "hk/specfun.hpp"

#include <cmath>
#include <limits>

namespace hk {

double gamma_fn(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("gamma_fn: pole at nonpositive integer");
    return std::tgamma(x);
}

double log_gamma_fn(double x) {
    if (x <= 0.0) throw std::domain_error("log_gamma_fn: requires x > 0");
    return std::lgamma(x);
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 10000;

// gam1 = [1/Gamma(1-mu) - 1/Gamma(1+mu)] / (2 mu)
// gam2 = [1/Gamma(1-mu) + 1/Gamma(1+mu)] / 2
// For small mu use ln(1/Gamma(1+z)) = g z - zeta(2) z^2/2 + zeta(3) z^3/3 - ...
void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
    if (std::abs(mu) > 1e-3) {
        const double gp = std::tgamma(1.0 + mu);
        const double gm = std::tgamma(1.0 - mu);
        gampl = 1.0 / gp;
        gammi = 1.0 / gm;
        gam1 = (gammi - gampl) / (2.0 * mu);
        gam2 = 0.5 * (gammi + gampl);
    } else {
        constexpr double g = 0.57721566490153286060651209;  // Euler gamma
        constexpr double z2 = 1.64493406684822643647241517;  // zeta(2)
        constexpr double z3 = 1.20205690315959428539973816;
        constexpr double z4 = 1.08232323371113819151600369;
        constexpr double z5 = 1.03692775514336992633136548;
        auto inv_gamma_1p = [&](double z) {
            const double lg = z * (g + z * (-z2 / 2 + z * (z3 / 3 + z * (-z4 / 4 + z * z5 / 5))));
            return std::exp(lg);
        };
        gampl = inv_gamma_1p(mu);
        gammi = inv_gamma_1p(-mu);
        gam1 = (mu == 0.0) ? -g : (gammi - gampl) / (2.0 * mu);
        gam2 = 0.5 * (gammi + gampl);
    }
}

// K_mu and K_{mu+1} for |mu| <= 1/2, 0 < x <= 2 (Temme 1975 series).
void bessel_k_small(double mu, double x, double& kmu, double& kmup1) {
    const double x2 = 0.5 * x;
    const double pimu = M_PI * mu;
    const double fact = (std::abs(pimu) < 1e-15) ? 1.0 : pimu / std::sin(pimu);
    const double d = -std::log(x2);
    const double e = mu * d;
    const double fact2 = (std::abs(e) < 1e-15) ? 1.0 : std::sinh(e) / e;
    double gam1, gam2, gampl, gammi;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    const double ee = std::exp(e);
    double p = 0.5 * ee / gampl;
    double q = 0.5 / (ee * gammi);
    double c = 1.0;
    const double dd = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
        ff = (i * ff + p + q) / (i * i - mu * mu);
        c *= dd / i;
        p /= (i - mu);
        q /= (i + mu);
        const double del = c * ff;
        sum += del;
        const double del1 = c * (p - i * ff);
        sum1 += del1;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    if (i > kMaxIter) throw std::runtime_error("bessel_k: series failed to converge");
    kmu = sum;
    kmup1 = sum1 * 2.0 / x;
}

// Scaled exp(x)*K_mu and exp(x)*K_{mu+1} for |mu| <= 1/2, x > 2 (Steed CF2).
void bessel_k_large_scaled(double mu, double x, double& kmu, double& kmup1) {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu * mu;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= kMaxIter; ++i) {
        a -= 2 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps) break;
    }
    if (i > kMaxIter) throw std::runtime_error("bessel_k: continued fraction failed");
    h = a1 * h;
    kmu = std::sqrt(M_PI / (2.0 * x)) / s;
    kmup1 = kmu * (mu + x + 0.5 - h) / x;
}

double bessel_k_impl(double nu, double x, bool scaled) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k: requires x > 0");
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw std::domain_error("bessel_k: requires finite nu >= 0");
    const int nl = static_cast<int>(nu + 0.5);
    const double mu = nu - nl;  // in [-1/2, 1/2]
    double kmu, kmup1;
    if (x <= 2.0) {
        bessel_k_small(mu, x, kmu, kmup1);
        if (scaled) {
            const double ex = std::exp(x);
            kmu *= ex;
            kmup1 *= ex;
        }
    } else {
        bessel_k_large_scaled(mu, x, kmu, kmup1);
        if (!scaled) {
            const double ex = std::exp(-x);
            kmu *= ex;
            kmup1 *= ex;
        }
    }
    double km = kmu, k = kmup1;
    for (int j = 1; j < nl; ++j) {
        const double knext = km + 2.0 * (mu + j) / x * k;
        km = k;
        k = knext;
    }
    const double out = (nl == 0) ? km : k;
    if (!std::isfinite(out))
        throw std::overflow_error("bessel_k: overflow (x near 0 with large order?)");
    return out;
}

}  // namespace

double bessel_k(double nu, double x) { return bessel_k_impl(nu, x, false); }

double bessel_k_scaled(double nu, double x) { return bessel_k_impl(nu, x, true); }

}  // namespace hk
