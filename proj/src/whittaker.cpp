#include "sl2c/whittaker.hpp"

#include <algorithm>
#include <sstream>

#include "sl2c/quadrature.hpp"

namespace sl2c::whittaker {

namespace {

void check_labels(int k, int m, int w) {
  std::ostringstream msg;
  if (k < 0) msg << "weight k = " << k << " must be non-negative";
  else if (m < k) msg << "K-type m = " << m << " must be >= k = " << k;
  else if ((m - k) % 2 != 0) msg << "m = " << m << " and k = " << k << " must have equal parity";
  else if (std::abs(w) > m || (m - w) % 2 != 0) msg << "w = " << w << " is not a weight of rho_" << m;
  else return;
  throw std::invalid_argument("whittaker: " + msg.str());
}

double log_binom(int n, int j) {
  return std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
}

}  // namespace

std::vector<std::pair<int, int>> index_set(int k, int m, int w) {
  check_labels(k, m, w);
  // w and k have the same parity, so the half-differences are integers.
  const int p_min = std::max(0, (w - k) / 2);
  const int q_min = std::max(0, (-w - k) / 2);
  const int total = (m - k) / 2;
  std::vector<std::pair<int, int>> out;
  for (int p = p_min; p <= total; ++p)
    for (int q = q_min; p + q <= total; ++q) out.emplace_back(p, q);
  return out;
}

WhittakerSpec WhittakerSpec::make(int k, int m, double r) {
  WhittakerSpec s;
  s.k = k;
  s.m = m;
  s.r = r;
  s.validate();
  return s;
}

bool column_pinned(int k, int m, int w) { return w == m || k == m; }

namespace {

double pinned_value(int k, int m, int w) {
  if (w == m) return 1.0;
  (void)m;
  const int j = (k - w) / 2;
  return std::exp(0.5 * log_binom(k, j));
}

}  // namespace

void WhittakerSpec::validate() const {
  check_labels(k, m, m);
  if (!std::isfinite(r)) throw std::invalid_argument("whittaker: r must be finite");
  for (const auto& [key, value] : coeffs) {
    const auto [w, p, q] = key;
    check_labels(k, m, w);
    const auto idx = index_set(k, m, w);
    if (std::find(idx.begin(), idx.end(), std::make_pair(p, q)) == idx.end()) {
      std::ostringstream msg;
      msg << "whittaker: (p, q) = (" << p << ", " << q << ") is not in the index set of w = " << w;
      throw std::invalid_argument(msg.str());
    }
    if (!std::isfinite(value)) throw std::invalid_argument("whittaker: coefficient must be finite");
    if (column_pinned(k, m, w) && std::abs(value - pinned_value(k, m, w)) > 1e-12 * std::abs(value)) {
      std::ostringstream msg;
      msg << "whittaker: column w = " << w << " is pinned to " << pinned_value(k, m, w)
          << ", got " << value;
      throw std::invalid_argument(msg.str());
    }
  }
}

std::vector<WhittakerTerm> column_terms(const WhittakerSpec& spec, int w, bool* unpinned) {
  const auto idx = index_set(spec.k, spec.m, w);
  const bool pinned = column_pinned(spec.k, spec.m, w);
  bool defaulted = false;
  std::vector<WhittakerTerm> out;
  for (const auto& [p, q] : idx) {
    WhittakerTerm t{w, p, q, 1.0, pinned};
    if (pinned) {
      t.coeff = pinned_value(spec.k, spec.m, w);
    } else if (auto it = spec.coeffs.find({w, p, q}); it != spec.coeffs.end()) {
      t.coeff = it->second;
    } else if (spec.policy == UnpinnedPolicy::error) {
      std::ostringstream msg;
      msg << "whittaker: missing coefficient C_{" << p << "," << q << "} for column w = " << w
          << " (k = " << spec.k << ", m = " << spec.m << ")";
      throw std::invalid_argument(msg.str());
    } else {
      defaulted = true;
    }
    out.push_back(t);
  }
  if (unpinned) *unpinned = defaulted;
  return out;
}

Complex term_order(double r, int p, int q, int w) { return Complex(p - q - 0.5 * w, -r); }

bool WhittakerValue::has(ResultFlag f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

namespace {

void add_flag(std::vector<ResultFlag>& flags, ResultFlag f) {
  if (std::find(flags.begin(), flags.end(), f) == flags.end()) flags.push_back(f);
}

}  // namespace

WhittakerValue whittaker_V_scaled(const WhittakerSpec& spec, int w, double y) {
  if (!(y > 0.0) || !std::isfinite(y)) throw std::invalid_argument("whittaker_V: y must be positive");
  bool unpinned = false;
  const auto terms = column_terms(spec, w, &unpinned);

  WhittakerValue out;
  if (unpinned) add_flag(out.flags, ResultFlag::coefficients_unpinned);
  std::vector<std::pair<Complex, double>> parts;  // mantissa, log scale
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    const auto kv = special::bessel_k_scaled(term_order(spec.r, t.p, t.q, t.w), 4.0 * kPi * y);
    for (auto f : kv.flags) add_flag(out.flags, f);
    const double scale = kv.log_scale + (0.5 * spec.k + 1.0 + t.p + t.q) * std::log(y);
    parts.emplace_back(t.coeff * kv.mantissa, scale);
    top = std::max(top, scale);
  }
  Complex sum = 0.0;
  for (const auto& [mant, scale] : parts) sum += mant * std::exp(scale - top);
  out.mantissa = sum;
  out.log_scale = top;
  return out;
}

Complex whittaker_V(const WhittakerSpec& spec, int w, double y) {
  return whittaker_V_scaled(spec, w, y).value();
}

namespace {

// log of the Gamma part shared by unitary_constant and whittaker_norm_sq:
// log[Gamma(1+m/2+k/2) Gamma(1+m/2-k/2) |Gamma(1+m/2+ir)|^2 / Gamma(m+2)].
double log_gamma_ratio(int k, int m, double r) {
  check_labels(k, m, m);
  const double h = 1.0 + 0.5 * m;
  return std::lgamma(h + 0.5 * k) + std::lgamma(h - 0.5 * k) +
         2.0 * special::log_gamma(Complex(h, r)).real() - std::lgamma(m + 2.0);
}

}  // namespace

double log_unitary_constant(int k, int m, double r) {
  return 0.5 * m * std::log(2.0 * kPi) - 0.5 * log_gamma_ratio(k, m, r);
}

double unitary_constant(int k, int m, double r) { return std::exp(log_unitary_constant(k, m, r)); }

double whittaker_norm_sq(int k, int m, double r) {
  return std::exp(log_gamma_ratio(k, m, r) - std::log(8.0) - (m + 2.0) * std::log(2.0 * kPi));
}

QuadratureResult whittaker_norm_sq_quad(int k, int m, double r, const AccuracyBudget& budget) {
  const auto spec = WhittakerSpec::make(k, m, r);
  auto integrand = [&](double y) -> Complex {
    const auto v = whittaker_V_scaled(spec, m, y);
    return std::norm(v.mantissa) * std::exp(2.0 * v.log_scale) / y;
  };
  return quad::positive_reals(integrand, budget, {1e-40, 12.0});
}

}  // namespace sl2c::whittaker
