#include "sl2c/integrals.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <limits>
#include <sstream>

#include "sl2c/principal_series.hpp"
#include "sl2c/quadrature.hpp"
#include "sl2c/special_functions.hpp"

namespace sl2c::integrals {

using special::log_gamma;

void BesselMomentParams::validate() const {
  checked(lambda, "lambda");
  checked(mu, "mu");
  checked(nu, "nu");
  if (!(lambda.real() + 1.0 > std::abs(mu.real()) + std::abs(nu.real()))) {
    std::ostringstream msg;
    msg << "bessel_moment: divergent parameters (Re lambda + 1 = " << lambda.real() + 1.0
        << " must exceed |Re mu| + |Re nu| = " << std::abs(mu.real()) + std::abs(nu.real()) << ")";
    throw std::domain_error(msg.str());
  }
}

namespace {

Complex log_bessel_moment(const BesselMomentParams& p) {
  p.validate();
  return (p.lambda - 2.0) * std::log(2.0) - log_gamma(p.lambda + 1.0) +
         special::log_gamma_product_pm(p.lambda, p.mu, p.nu);
}

}  // namespace

Complex bessel_moment(const BesselMomentParams& p) { return std::exp(log_bessel_moment(p)); }

QuadratureResult bessel_moment_quad(const BesselMomentParams& p, const AccuracyBudget& budget) {
  p.validate();
  budget.validate();
  auto integrand = [&](double y) -> Complex {
    const auto kmu = special::bessel_k_scaled(p.mu, y);
    const auto knu = special::bessel_k_scaled(p.nu, y);
    return kmu.mantissa * knu.mantissa *
           std::exp(p.lambda * std::log(y) + kmu.log_scale + knu.log_scale);
  };
  return quad::positive_reals(integrand, budget, {1e-40, 400.0});
}

namespace {

Complex log_triple_term(const TripleTermParams& t) {
  checked(t.a, "a");
  checked(t.b, "b");
  checked(t.c, "c");
  const Complex ir(0.0, t.r);
  const Complex args[4] = {(t.a - t.b + t.c) / 2.0, (t.a - t.b - t.c) / 2.0,
                           (t.a + t.b + t.c) / 2.0 + ir, (t.a + t.b - t.c) / 2.0 + ir};
  const char* names[4] = {"(a-b+c)/2", "(a-b-c)/2", "(a+b+c)/2+ir", "(a+b-c)/2+ir"};
  Complex s = 0.0;
  for (int i = 0; i < 4; ++i) {
    try {
      s += log_gamma(args[i]);
    } catch (const PoleError&) {
      throw PoleError(std::string("triple_term: Gamma pole at ") + names[i]);
    }
  }
  return s - std::log(8.0) - log_gamma(t.a + ir) - (t.a + ir) * std::log(2.0 * kPi);
}

}  // namespace

Complex triple_term(const TripleTermParams& t) { return std::exp(log_triple_term(t)); }

Complex triple_term_via_moment(const TripleTermParams& t) {
  // int y^{a+ir} K_{b+ir}(4 pi y) K_c(4 pi y) dy/y = (4 pi)^{-(a+ir)} * moment(a+ir-1, b+ir, c).
  const Complex ir(0.0, t.r);
  const BesselMomentParams p{t.a + ir - 1.0, t.b + ir, t.c};
  return std::exp(log_bessel_moment(p) - (t.a + ir) * std::log(4.0 * kPi));
}

LocalIntegralSpec LocalIntegralSpec::make(const whittaker::WhittakerSpec& spec1, int w1,
                                          const whittaker::WhittakerSpec& spec2, int w2, int k) {
  LocalIntegralSpec s;
  s.spec1 = spec1;
  s.w1 = w1;
  s.spec2 = spec2;
  s.w2 = w2;
  s.k = k;
  s.r3 = spec1.r;
  return s;
}

namespace {

std::vector<whittaker::WhittakerTerm> strict_terms(whittaker::WhittakerSpec spec, int w) {
  spec.policy = whittaker::UnpinnedPolicy::error;
  return whittaker::column_terms(spec, w);
}

}  // namespace

Complex local_integral_T(const LocalIntegralSpec& s, BesselOrderConvention convention) {
  s.spec1.validate();
  s.spec2.validate();
  const auto terms1 = strict_terms(s.spec1, s.w1);
  const auto terms2 = strict_terms(s.spec2, s.w2);
  if (!s.selection_rule()) return 0.0;

  const double weight_scale = convention == BesselOrderConvention::half_weight ? 0.5 : 1.0;
  const double log_c = whittaker::log_unitary_constant(s.spec1.k, s.spec1.m, s.spec1.r) +
                       whittaker::log_unitary_constant(s.spec2.k, s.spec2.m, s.spec2.r);
  Complex total = 0.0;
  for (const auto& t1 : terms1) {
    for (const auto& t2 : terms2) {
      TripleTermParams tp;
      tp.a = Complex(1.0 + 0.5 * (s.spec1.k + s.spec2.k) + t1.p + t1.q + t2.p + t2.q,
                     s.r3 - s.spec1.r);
      tp.b = t1.p - t1.q - weight_scale * t1.w;
      tp.c = Complex(t2.p - t2.q - weight_scale * t2.w, -s.spec2.r);
      tp.r = s.spec1.r;
      total += t1.coeff * t2.coeff * std::exp(log_c + log_triple_term(tp));
    }
  }
  return total;
}

QuadratureResult local_integral_T_quad(const LocalIntegralSpec& s, const AccuracyBudget& budget) {
  budget.validate();
  s.spec1.validate();
  s.spec2.validate();
  strict_terms(s.spec1, s.w1);
  strict_terms(s.spec2, s.w2);
  const double log_c = whittaker::log_unitary_constant(s.spec1.k, s.spec1.m, s.spec1.r) +
                       whittaker::log_unitary_constant(s.spec2.k, s.spec2.m, s.spec2.r);
  const Complex expo(-2.0, s.r3);  // y^{-1+ir3} dy/y
  auto integrand = [&](double y) -> Complex {
    const auto v1 = whittaker::whittaker_V_scaled(s.spec1, s.w1, y);
    const auto v2 = whittaker::whittaker_V_scaled(s.spec2, s.w2, y);
    return std::conj(v1.mantissa) * v2.mantissa *
           std::exp(expo * std::log(y) + v1.log_scale + v2.log_scale + log_c);
  };
  return quad::positive_reals(integrand, budget, {1e-40, 12.0});
}

ExponentReport exponent_report(int k, int m, int w1) {
  ExponentReport out;
  out.max_sigma = -std::numeric_limits<double>::infinity();
  for (const auto& [p, q] : whittaker::index_set(k, m, w1)) {
    const double sigma = p - q - 0.5 * w1 - 0.5 * m - 1.0;
    out.terms.push_back({p, q, sigma});
    if (sigma > out.max_sigma) {
      out.max_sigma = sigma;
      out.argmax.clear();
    }
    if (sigma == out.max_sigma) out.argmax.emplace_back(p, q);
  }
  out.extremal = out.max_sigma == -1.0;
  return out;
}

double term_sigma_stirling(int k, int m, int w1, int p, int q) {
  // r-dependent factors of C_1 * triple_term with r3 = r1 = r: the c- and
  // a-only Gammas are constant in r, (2 pi)^{-ir} has modulus one.
  const double a = 1.0 + 0.5 * k + p + q;
  const double b = p - q - 0.5 * w1;
  const special::GammaArg num[] = {{(a + b) / 2.0, 1.0}, {(a + b) / 2.0, 1.0}};
  const special::GammaArg den[] = {{a, 1.0}, {1.0 + 0.5 * m, 1.0}};
  return special::stirling_mod_exponent(num, den);
}

Complex weight_T1(int k, double r_prime) {
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("weight_T1: k must be a non-negative even integer");
  const double logv = 2.0 * log_gamma(Complex(0.5 * (1.0 + k), 0.5 * r_prime)).real() +
                      2.0 * log_gamma(Complex(0.5, 0.5 * r_prime)).real() -
                      2.0 * std::lgamma(1.0 + 0.5 * k) - log_gamma(Complex(1.0, r_prime)).real();
  return std::exp(logv);
}

QuadratureResult weight_T1_quad(int k, double r_prime, const AccuracyBudget& budget) {
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("weight_T1_quad: k must be a non-negative even integer");
  const double log_pref = std::log(kWeightAspectConstant) + 0.5 * k * std::log(2.0 * kPi) -
                          std::lgamma(1.0 + 0.5 * k) - log_gamma(Complex(1.0, r_prime)).real();
  auto integrand = [&](double y) -> Complex {
    const auto k1 = special::bessel_k_scaled(Complex(0.0, r_prime), 4.0 * kPi * y);
    const auto k2 = special::bessel_k_scaled(Complex(0.5 * k, 0.0), 4.0 * kPi * y);
    return k1.mantissa * k2.mantissa *
           std::exp(0.5 * k * std::log(y) + k1.log_scale + k2.log_scale + log_pref);
  };
  return quad::positive_reals(integrand, budget, {1e-40, 12.0});
}

namespace {

double log_T2_prefactor(int k) {
  return std::log(kWeightAspectConstant) + k * std::log(2.0 * kPi) - 2.0 * std::lgamma(1.0 + 0.5 * k);
}

double log_binom(int n, int j) {
  return std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
}

}  // namespace

Complex weight_T2(int k, double r_prime) {
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("weight_T2: k must be a non-negative even integer");
  // int y^{k+ir'} K_mu(4 pi y)^2 dy = (4 pi)^{-(k+1+ir')} moment(k+ir', mu, mu).
  const Complex lambda(k, r_prime);
  Complex total = 0.0;
  for (int i = 0; i <= k; ++i) {
    const Complex mu(0.5 * k - i, 0.0);
    total += std::exp(log_binom(k, i) + log_T2_prefactor(k) +
                      log_bessel_moment({lambda, mu, mu}) - (lambda + 1.0) * std::log(4.0 * kPi));
  }
  return total;
}

QuadratureResult weight_T2_quad(int k, double r_prime, const AccuracyBudget& budget) {
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("weight_T2_quad: k must be a non-negative even integer");
  const double log_pref = log_T2_prefactor(k);
  auto integrand = [&](double y) -> Complex {
    // y^{1+ir'} |W_2(y)|^2 y^{-2} / y with |W_2|^2 = y^{k+2} sum binom K^2.
    // K_{k/2-i} = K_{i-k/2}: pair the binomial terms i and k-i.
    const double log_y = std::log(y);
    Complex s = 0.0;
    for (int i = 0; 2 * i <= k; ++i) {
      const auto kv = special::bessel_k_scaled(Complex(0.5 * k - i, 0.0), 4.0 * kPi * y);
      const double mult = 2 * i == k ? 1.0 : 2.0;
      s += mult * kv.mantissa * kv.mantissa *
           std::exp(log_binom(k, i) + 2.0 * kv.log_scale + log_pref + k * log_y);
    }
    return s * std::exp(Complex(0.0, r_prime * log_y));
  };
  return quad::positive_reals(integrand, budget, {1e-40, 12.0});
}

namespace {

using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;

// Spherical function times e^d on the grid d = 0, step, 2 step, ...
std::vector<double> tabulate_spherical(double r, double step, std::size_t n, double* max_err) {
  std::vector<double> out(n);
  const AccuracyBudget budget{1e-11, 1e-300, 4000};
  for (std::size_t i = 0; i < n; ++i) {
    const double d = step * static_cast<double>(i);
    const auto s = principal::spherical_coefficient(r, 0.5 * d, budget);
    out[i] = s.value.real() * std::exp(d);
    *max_err = std::max(*max_err, s.abs_err * std::exp(d));
  }
  return out;
}

std::vector<double> every_other(const std::vector<double>& v) {
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); i += 2) out.push_back(v[i]);
  return out;
}

// S = c * 2 pi * int ds e^{-s} int_{|s|}^{d_max} sinh(d) Phi(d) dd, with
// cosh d = (|x|^2 + y^2 + 1) / (2y), y = e^s: the Haar integral of a
// bi-K-invariant function in NAK coordinates after the angular x-integral.
QuadratureResult nak_integral(const std::vector<Spline>& splines, double d_max, double c,
                              const AccuracyBudget& budget) {
  auto phi_prod = [&](double d) {
    double v = 1.0;
    for (const auto& s : splines) v *= s(d);
    // Each spline carries e^{d}; sinh(d) e^{-3d} keeps the product bounded.
    return v * 0.5 * (1.0 - std::exp(-2.0 * d)) * std::exp(-2.0 * d);
  };
  const AccuracyBudget inner_budget{std::max(1e-12, budget.rel_tol * 0.1), 1e-300, budget.max_subdivisions};
  auto outer = [&](double s) -> Complex {
    const double lo = std::abs(s);
    if (lo >= d_max) return 0.0;
    const auto inner = quad::gauss_kronrod([&](double d) -> Complex { return phi_prod(d); }, lo, d_max,
                                           inner_budget);
    return std::exp(-s) * inner.value;
  };
  auto res = quad::gauss_kronrod(outer, -d_max, d_max, budget);
  res.value *= 2.0 * kPi * c;
  res.abs_err *= 2.0 * kPi * c;
  return res;
}

}  // namespace

MvCheckResult mv_check(double r1, double r2, double r3, const MvCheckConfig& config, int k) {
  for (double r : {r1, r2, r3})
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("mv_check: spectral parameters must be positive");
  if (!(config.grid_step > 0.0) || !(config.d_max > 4 * config.grid_step))
    throw std::invalid_argument("mv_check: invalid radial grid");
  config.budget.validate();

  MvCheckResult out;
  const auto s1 = whittaker::WhittakerSpec::make(0, 0, r1);
  const auto s2 = whittaker::WhittakerSpec::make(0, 0, r2);
  auto spec = LocalIntegralSpec::make(s1, 0, s2, 0, k);
  spec.r3 = r3;
  out.T = local_integral_T(spec);
  out.T_unit = 32.0 * kPi * kPi * out.T;
  if (!spec.selection_rule()) {
    out.ratio = std::numeric_limits<double>::quiet_NaN();
    return out;
  }

  // Grid with an even number of intervals so the half-resolution table shares endpoints.
  std::size_t intervals = static_cast<std::size_t>(std::ceil(config.d_max / config.grid_step));
  if (intervals % 2) ++intervals;
  const double step = config.d_max / static_cast<double>(intervals);
  double table_err = 0.0;
  std::vector<Spline> fine, coarse;
  for (double r : {r1, r2, r3}) {
    const auto values = tabulate_spherical(r, step, intervals + 1, &table_err);
    fine.emplace_back(values.begin(), values.end(), 0.0, step);
    const auto half = every_other(values);
    coarse.emplace_back(half.begin(), half.end(), 0.0, 2.0 * step);
  }

  const double c = config.measure == NMeasure::self_dual ? 2.0 : 1.0;
  const auto s_fine = nak_integral(fine, config.d_max, c, config.budget);
  const auto s_coarse = nak_integral(coarse, config.d_max, c, config.budget);
  out.S_direct = s_fine.value.real();
  // Cubic interpolation error shrinks ~16x per halving; the coarse/fine gap bounds it.
  out.S_abs_err = s_fine.abs_err + std::abs(s_fine.value - s_coarse.value) + table_err;
  out.ratio = out.S_direct / (std::norm(out.T_unit) / (4.0 * kPi));
  out.asserted = true;
  return out;
}

}  // namespace sl2c::integrals
