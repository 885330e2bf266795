#pragma once

#include <stdexcept>

namespace hk {

// Gamma function for real non-pole arguments, negative non-integers included.
// Throws std::domain_error at 0, -1, -2, ...
double gamma_fn(double x);

// log|Gamma(x)| for x > 0.
double log_gamma_fn(double x);

// Modified Bessel function of the second kind, real order nu >= 0, x > 0.
// K_{-nu} = K_nu, so callers with negative order pass |nu|.
// Computed with a Temme-style series for x <= 2 and a Steed continued
// fraction for x > 2, then stable upward recurrence in the order.
double bessel_k(double nu, double x);

// exp(x) * K_nu(x); avoids underflow for large x.
double bessel_k_scaled(double nu, double x);

}  // namespace hk
