#include "sl2c/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace sl2c::special {
namespace {

constexpr double kHalfLog2Pi = 0.918938533204672741780329736405617640;
constexpr double kLogPi = 1.144729885849400174143427351353058712;

// B_{2k} / (2k (2k-1)) for k = 1..9.
constexpr std::array<double, 9> kStirling = {
    1.0 / 12.0,         -1.0 / 360.0,     1.0 / 1260.0,
    -1.0 / 1680.0,      1.0 / 1188.0,     -691.0 / 360360.0,
    1.0 / 156.0,        -3617.0 / 122400.0, 43867.0 / 244188.0};

bool is_nonpositive_integer(Complex z) {
  if (z.imag() != 0.0 || z.real() > 0.0) return false;
  return z.real() == std::floor(z.real());
}

Complex stirling(Complex z) {
  Complex series = 0.0;
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex p = inv;
  for (double c : kStirling) {
    series += c * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + series;
}

}  // namespace

Complex log_gamma(Complex z) {
  checked(z, "log_gamma argument");
  if (is_nonpositive_integer(z)) {
    std::ostringstream msg;
    msg << "log_gamma: pole at z = " << z.real();
    throw PoleError(msg.str());
  }
  if (z.real() < -1000.0) {
    // Reflection; the imaginary part is then only meaningful modulo 2*pi.
    return kLogPi - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  constexpr double kThreshold = 15.0;
  if (z.real() >= 0.0 && std::abs(z) >= kThreshold) return stirling(z);

  const int shift = static_cast<int>(std::ceil(kThreshold - z.real()));
  Complex correction = 0.0;
  for (int j = 0; j < shift; ++j) correction += std::log(z + static_cast<double>(j));
  return stirling(z + static_cast<double>(shift)) - correction;
}

ScaledBesselK bessel_k_scaled(Complex nu, double x, const AccuracyBudget& budget) {
  checked(nu, "bessel_k order");
  budget.validate();
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("bessel_k: x must be positive and finite");
  if (std::abs(nu.real()) > 30.0)
    throw std::domain_error("bessel_k: |Re nu| > 30 is outside the validity window");

  // K is even in nu; fold to Re nu >= 0 so that bessel_k(-nu) == bessel_k(nu).
  if (nu.real() < 0.0 || (nu.real() == 0.0 && nu.imag() < 0.0)) nu = -nu;
  const double sigma = nu.real();
  const double rho = nu.imag();

  // Horizontal contour through the saddle point of -x cosh t + nu t, kept a
  // margin away from the lines Im t = +-pi/2 where the integrand stops decaying.
  const double margin = std::clamp(4.0 / std::max(std::abs(rho), 1e-300), 0.05, kPi / 2);
  const double theta_max = kPi / 2 - margin;
  const Complex saddle = std::asinh(nu / x);
  const double theta = std::clamp(saddle.imag(), -theta_max, theta_max);
  const double cos_t = std::cos(theta);
  const double sin_t = std::sin(theta);
  const double strip = kPi / 2 - std::abs(theta);

  // Log-modulus along the contour is concave in t with its peak at t_peak.
  auto log_mod = [&](double t) { return sigma * t - rho * theta - x * cos_t * std::cosh(t); };
  const double t_peak = std::asinh(sigma / (x * cos_t));
  const double l_peak = log_mod(t_peak);
  constexpr double kCut = 46.0;  // exp(-46) ~ 1e-20 relative to the peak
  double step = 0.25;
  double t_hi = t_peak;
  while (log_mod(t_hi) > l_peak - kCut) t_hi += step, step *= 1.25;
  step = 0.25;
  double t_lo = t_peak;
  while (log_mod(t_lo) > l_peak - kCut) t_lo -= step, step *= 1.25;

  auto term = [&](double t) -> Complex {
    const double re = sigma * t - rho * theta - x * cos_t * std::cosh(t) - l_peak;
    const double im = rho * t + sigma * theta - x * sin_t * std::sinh(t);
    return std::polar(std::exp(re), im);
  };

  double h = strip / 2.0;
  long n_lo = static_cast<long>(std::floor((t_lo - t_peak) / h));
  long n_hi = static_cast<long>(std::ceil((t_hi - t_peak) / h));
  Complex sum = 0.0;
  double abs_sum = 0.0;
  for (long n = n_lo; n <= n_hi; ++n) {
    const Complex v = term(t_peak + static_cast<double>(n) * h);
    sum += v;
    abs_sum += std::abs(v);
  }
  Complex estimate = 0.5 * h * sum;

  ScaledBesselK out;
  const double eps = std::numeric_limits<double>::epsilon();
  const double accept = std::max(1e-3 * std::sqrt(budget.rel_tol), budget.rel_tol);
  bool converged = false;
  double rel_diff = 1.0;
  for (std::size_t level = 0; level < budget.max_subdivisions; ++level) {
    // Halve the step: new nodes are the midpoints of the current grid.
    Complex mid = 0.0;
    const long count = (n_hi - n_lo);
    for (long j = 0; j < count; ++j) {
      const double t = t_peak + (static_cast<double>(n_lo + j) + 0.5) * h;
      const Complex v = term(t);
      mid += v;
      abs_sum += std::abs(v);
    }
    // Subsequent levels subdivide every existing interval.
    sum += mid;
    h *= 0.5;
    const Complex refined = 0.5 * h * sum;
    const double scale = std::max(std::abs(refined), std::numeric_limits<double>::min());
    rel_diff = std::abs(refined - estimate) / scale;
    estimate = refined;
    const double roundoff = 8.0 * eps * 0.5 * h * abs_sum / scale;
    if (rel_diff <= accept || rel_diff <= 4.0 * roundoff) {
      converged = true;
      out.rel_err = std::max(rel_diff * rel_diff, roundoff);
      if (roundoff > budget.rel_tol) out.flags.push_back(ResultFlag::precision_limited);
      break;
    }
    // The index range doubles with the grid.
    n_lo *= 2;
    n_hi *= 2;
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "bessel_k: step halving did not converge for nu = " << nu << ", x = " << x
        << " (last relative difference " << rel_diff << ")";
    throw BudgetExhausted(msg.str());
  }

  out.mantissa = estimate;
  out.log_scale = l_peak;
  const double log_abs = std::log(std::abs(estimate)) + l_peak;
  if (log_abs < std::log(std::numeric_limits<double>::min()))
    out.flags.push_back(ResultFlag::subnormal);
  return out;
}

Complex bessel_k(Complex nu, double x, const AccuracyBudget& budget) {
  return bessel_k_scaled(nu, x, budget).value();
}

Complex log_gamma_product_pm(Complex lambda, Complex mu, Complex nu) {
  checked(lambda, "lambda");
  checked(mu, "mu");
  checked(nu, "nu");
  Complex total = 0.0;
  for (int s_mu : {1, -1}) {
    for (int s_nu : {1, -1}) {
      const Complex arg = 0.5 * (1.0 + lambda + double(s_mu) * mu + double(s_nu) * nu);
      try {
        total += log_gamma(arg);
      } catch (const PoleError&) {
        std::ostringstream msg;
        msg << "gamma_product_pm: pole in factor with signs (" << (s_mu > 0 ? '+' : '-') << ","
            << (s_nu > 0 ? '+' : '-') << "), argument " << arg;
        throw PoleError(msg.str());
      }
    }
  }
  return total;
}

Complex gamma_product_pm(Complex lambda, Complex mu, Complex nu) {
  return std::exp(log_gamma_product_pm(lambda, mu, nu));
}

double stirling_mod_exponent(std::span<const GammaArg> numerator,
                             std::span<const GammaArg> denominator) {
  double weight = 0.0;
  double sigma = 0.0;
  for (const auto& g : numerator) {
    if (g.r_coeff == 0.0) throw std::invalid_argument("stirling_mod_exponent: r_coeff must be nonzero");
    weight += std::abs(g.r_coeff);
    sigma += g.shift.real() - 0.5;
  }
  for (const auto& g : denominator) {
    if (g.r_coeff == 0.0) throw std::invalid_argument("stirling_mod_exponent: r_coeff must be nonzero");
    weight -= std::abs(g.r_coeff);
    sigma -= g.shift.real() - 0.5;
  }
  if (std::abs(weight) > 1e-12) {
    std::ostringstream msg;
    msg << "stirling_mod_exponent: unbalanced exponential weight " << weight
        << " (ratio is exponential in r, not a power)";
    throw std::domain_error(msg.str());
  }
  return sigma;
}

double log_abs_gamma_ratio(std::span<const GammaArg> numerator,
                           std::span<const GammaArg> denominator, double r) {
  double s = 0.0;
  for (const auto& g : numerator) s += log_gamma(g.shift + Complex(0.0, g.r_coeff * r)).real();
  for (const auto& g : denominator) s -= log_gamma(g.shift + Complex(0.0, g.r_coeff * r)).real();
  return s;
}

}  // namespace sl2c::special
