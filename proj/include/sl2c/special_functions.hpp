#pragma once

#include <span>
#include <vector>

#include "sl2c/types.hpp"

namespace sl2c::special {

/// log Gamma(z), continued analytically from the right half plane (so the
/// recurrence log Gamma(z+1) = log z + log Gamma(z) holds without 2*pi*i
/// jumps for Re z > 0). Throws PoleError at non-positive integers.
Complex log_gamma(Complex z);

inline Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

/// Default accuracy for Bessel K evaluation.
inline AccuracyBudget bessel_budget() { return {1e-14, 1e-300, 12}; }

/// K_nu(x) kept as mantissa * exp(log_scale) so large and tiny values survive
/// intermediate products.
struct ScaledBesselK {
  Complex mantissa{};
  double log_scale = 0.0;
  double rel_err = 0.0;
  std::vector<ResultFlag> flags;

  Complex value() const { return mantissa * std::exp(log_scale); }
};

/// Modified Bessel function of the second kind for complex order,
///
///   K_nu(x) = (1/2) * integral over the real line of exp(-x cosh t + nu t) dt,
///
/// integrated by the trapezoid rule along the horizontal line Im t = theta
/// through the saddle of the exponent (theta kept inside (-pi/2, pi/2)).
/// The step is halved until successive sums agree; the rule converges
/// geometrically in 1/h since the integrand is entire.
///
/// Valid for x > 0 and |Re nu| <= 30. For |Im nu| large compared to x the
/// value is exponentially small; if it underflows the result is flagged
/// `subnormal`, and if cancellation limits the relative accuracy it is
/// flagged `precision_limited`.
ScaledBesselK bessel_k_scaled(Complex nu, double x, const AccuracyBudget& budget = bessel_budget());

Complex bessel_k(Complex nu, double x, const AccuracyBudget& budget = bessel_budget());

/// Product over both signs of mu and nu: Gamma((1 + lambda +- mu +- nu) / 2),
/// evaluated as a sum of log-gammas with a single final exponential.
Complex log_gamma_product_pm(Complex lambda, Complex mu, Complex nu);
Complex gamma_product_pm(Complex lambda, Complex mu, Complex nu);

/// A factor Gamma(shift + i * r_coeff * r) in a ratio studied as r -> inf.
struct GammaArg {
  Complex shift;
  double r_coeff = 1.0;
};

/// Power sigma with |prod num / prod den| ~ r^sigma as r -> inf, from
/// Stirling: sum over numerator of (Re shift - 1/2) minus the same over the
/// denominator. The exponential factors exp(-pi |c| r / 2) must cancel;
/// otherwise std::domain_error.
double stirling_mod_exponent(std::span<const GammaArg> numerator,
                             std::span<const GammaArg> denominator);

/// log |prod num / prod den| at a given r, by direct log-gamma evaluation.
double log_abs_gamma_ratio(std::span<const GammaArg> numerator,
                           std::span<const GammaArg> denominator, double r);

}  // namespace sl2c::special
