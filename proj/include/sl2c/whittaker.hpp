#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "sl2c/special_functions.hpp"
#include "sl2c/types.hpp"

namespace sl2c::whittaker {

/// (p, q) pairs of Eq. (whittakerindex):
///   p, q >= 0,  p >= w/2 - k/2,  q >= -w/2 - k/2,  p + q <= (m - k)/2.
/// Throws std::invalid_argument unless k >= 0, m >= k, m = k = w (mod 2), |w| <= m.
std::vector<std::pair<int, int>> index_set(int k, int m, int w);

/// What to do with a column whose C_{p,q} are not fixed by the closed forms.
enum class UnpinnedPolicy {
  default_to_one,  // use 1 and flag the result `coefficients_unpinned`
  error,           // throw std::invalid_argument
};

struct WhittakerTerm {
  int w = 0;
  int p = 0;
  int q = 0;
  double coeff = 1.0;
  bool pinned = false;
};

/// Whittaker vector of the representation with weight k >= 0 and spectral
/// parameter r (of either sign), restricted to its K-type rho_m.
struct WhittakerSpec {
  int k = 0;
  int m = 0;
  double r = 0.0;
  /// User-supplied C_{p,q} keyed by (w, p, q). Entries for pinned columns
  /// must equal the pinned value.
  std::map<std::tuple<int, int, int>, double> coeffs;
  UnpinnedPolicy policy = UnpinnedPolicy::default_to_one;

  static WhittakerSpec make(int k, int m, double r);
  void validate() const;
};

/// Whether the column w has its coefficients fixed by Eq. (whittakersimple1)
/// (w = m, value 1) or Eq. (whittakersimple2) (k = m, value binom(k, j)^{1/2}
/// with w = k - 2j).
bool column_pinned(int k, int m, int w);

/// Terms of column w with resolved coefficients; `unpinned` (if given) is set
/// when a default of 1 was used.
std::vector<WhittakerTerm> column_terms(const WhittakerSpec& spec, int w, bool* unpinned = nullptr);

/// Bessel order of a term, -ir + p - q - w/2.
Complex term_order(double r, int p, int q, int w);

struct WhittakerValue {
  Complex mantissa{};
  double log_scale = 0.0;
  std::vector<ResultFlag> flags;

  Complex value() const { return mantissa * std::exp(log_scale); }
  bool has(ResultFlag f) const;
};

/// V_w(y) = y^{k/2+1} sum_{(p,q)} C_{p,q} y^{p+q} K_{-ir+p-q-w/2}(4 pi y),
/// accumulated in the log domain.
WhittakerValue whittaker_V_scaled(const WhittakerSpec& spec, int w, double y);
Complex whittaker_V(const WhittakerSpec& spec, int w, double y);

/// (2 pi)^{m/2} Gamma(m+2)^{1/2} [Gamma(1+m/2+k/2) Gamma(1+m/2-k/2)]^{-1/2} |Gamma(1+m/2+ir)|^{-1}.
double unitary_constant(int k, int m, double r);
double log_unitary_constant(int k, int m, double r);

/// Gamma(1+m/2+k/2) Gamma(1+m/2-k/2) |Gamma(1+m/2+ir)|^2 / (8 Gamma(m+2) (2 pi)^{m+2}),
/// the integral of |V_m(y)|^2 dy/y over (0, inf).
double whittaker_norm_sq(int k, int m, double r);

/// The same integral by adaptive quadrature of the Bessel kernel.
QuadratureResult whittaker_norm_sq_quad(int k, int m, double r, const AccuracyBudget& budget = {1e-10, 1e-300, 2000});

}  // namespace sl2c::whittaker
