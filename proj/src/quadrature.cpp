#include "hk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>

namespace hk {

namespace {

// QUADPACK 7/15 Gauss-Kronrod pair on [-1,1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
    double value;
    double error;
};

PanelEstimate gk15(const RealFn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - h * kXgk[j]);
        fv[14 - j] = f(c + h * kXgk[j]);
    }
    fv[7] = f(c);
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int j = 0; j < 7; ++j) {
        resk += kWgk[j] * (fv[j] + fv[14 - j]);
        if (j % 2 == 1) resg += kWg[j / 2] * (fv[j] + fv[14 - j]);
    }
    const double value = resk * h;
    double err = std::abs((resk - resg) * h);
    // QUADPACK-style error sharpening.
    double resabs = 0.0;
    for (int j = 0; j < 7; ++j) resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    resabs = (resabs + kWgk[7] * std::abs(fv[7])) * std::abs(h);
    if (resabs > 0.0 && err > 0.0) {
        const double scale = std::pow(200.0 * err / resabs, 1.5);
        if (scale < 1.0) err = resabs * scale;
    }
    return {value, err};
}

struct Interval {
    double a, b, value, error;
    long id;  // insertion order, makes the heap deterministic
    bool operator<(const Interval& o) const {
        if (error != o.error) return error < o.error;
        return id > o.id;
    }
};

}  // namespace

QuadratureResult integrate(const RealFn& f, double a, double b, const QuadratureConfig& cfg) {
    QuadratureResult res;
    if (a == b) {
        res.evaluations = 1;
        return res;
    }
    std::priority_queue<Interval> heap;
    long next_id = 0;
    PanelEstimate e0 = gk15(f, a, b);
    res.evaluations = 15;
    heap.push({a, b, e0.value, e0.error, next_id++});
    double total = e0.value, toterr = e0.error;
    int splits = 0;
    while (toterr > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)) &&
           splits < cfg.max_subdivisions) {
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at rounding resolution; keep its contribution as-is
            total += 0.0;
            heap.push(worst);
            break;
        }
        PanelEstimate left = gk15(f, worst.a, mid);
        PanelEstimate right = gk15(f, mid, worst.b);
        res.evaluations += 30;
        total += left.value + right.value - worst.value;
        toterr += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.value, left.error, next_id++});
        heap.push({mid, worst.b, right.value, right.error, next_id++});
        ++splits;
    }
    // Recompute sums from the heap for a cleaner rounding profile.
    double v = 0.0, e = 0.0;
    while (!heap.empty()) {
        v += heap.top().value;
        e += heap.top().error;
        heap.pop();
    }
    res.value = v;
    res.error_estimate = e;
    if (e > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(v)) &&
        splits >= cfg.max_subdivisions) {
        throw QuadratureError("integrate: subdivision budget exhausted", res);
    }
    return res;
}

QuadratureResult integrate_half_line(const RealFn& f, const QuadratureConfig& cfg,
                                     double peak_hint) {
    // t = exp(u); integrand g(u) = f(exp(u)) * exp(u).
    auto g = [&f](double u) {
        const double t = std::exp(u);
        if (t == 0.0 || !std::isfinite(t)) return 0.0;
        const double v = f(t) * t;
        return std::isfinite(v) ? v : 0.0;
    };
    const double u0 = std::log(std::max(peak_hint, 1e-300));

    // Deterministic window scan: march outward from u0 until the integrand has
    // decayed 1e-18 below the largest magnitude seen, for several steps.
    const double step = 0.5;
    double gmax = std::abs(g(u0));
    long evals = 1;
    auto scan = [&](double dir) {
        double u = u0;
        int quiet = 0;
        const int need_quiet = 6;
        const double ulim = 720.0;
        while (std::abs(u - u0) < ulim) {
            u += dir * step;
            const double a = std::abs(g(u));
            ++evals;
            if (a > gmax) gmax = a;
            if (a <= gmax * 1e-18)
                ++quiet;
            else
                quiet = 0;
            if (quiet >= need_quiet && std::abs(u - u0) > 8.0) break;
        }
        return u;
    };
    double ulo = scan(-1.0);
    double uhi = scan(+1.0);
    if (gmax == 0.0) return {0.0, 0.0, evals};
    QuadratureResult r = integrate(g, ulo, uhi, cfg);
    r.evaluations += evals;
    return r;
}

namespace {

GaussRule make_gauss_legendre(int n) {
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        rule.x[i] = -z;
        rule.x[n - 1 - i] = z;
        rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[n - 1 - i] = rule.w[i];
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int npoints) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(npoints);
    if (it == cache.end()) it = cache.emplace(npoints, make_gauss_legendre(npoints)).first;
    return it->second;
}

}  // namespace hk
