#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hk {

// Adaptive quadrature configuration. Default tolerances sit two orders below
// the tightest verification tolerance used anywhere in the library.
struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
    enum class Hint { none, half_line_exponential, half_line_power_exponential };
    Hint transform_hint = Hint::none;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

// Thrown when the subdivision budget is exhausted before the tolerance is
// met. Carries the best estimate so callers can decide to keep it.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& msg, QuadratureResult best)
        : std::runtime_error(msg), best_estimate(best) {}
    QuadratureResult best_estimate;
};

using RealFn = std::function<double(double)>;

// Integral over the finite interval [a, b], adaptive Gauss-Kronrod 7/15.
QuadratureResult integrate(const RealFn& f, double a, double b,
                           const QuadratureConfig& cfg = {});

// Integral over (0, inf). Internally substitutes t = exp(u); the window in u
// is located by a deterministic scan around log(peak_hint). Suitable for
// integrands with power-law or essential behaviour at 0 and (at least)
// power-times-exponential decay at infinity.
QuadratureResult integrate_half_line(const RealFn& f, const QuadratureConfig& cfg = {},
                                     double peak_hint = 1.0);

// Gauss-Legendre rule on [-1, 1]; nodes/weights cached per point count.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};
const GaussRule& gauss_legendre(int npoints);

}  // namespace hk
