#pragma once

#include <utility>
#include <vector>

#include "sl2c/types.hpp"
#include "sl2c/whittaker.hpp"

namespace sl2c::integrals {

/// Parameters of the integral over (0, inf) of y^lambda K_mu(y) K_nu(y) dy.
struct BesselMomentParams {
  Complex lambda;
  Complex mu;
  Complex nu;

  /// Throws std::domain_error unless Re lambda + 1 > |Re mu| + |Re nu|.
  void validate() const;
};

/// 2^{lambda-2} / Gamma(lambda+1) * prod_{+-,+-} Gamma((1 + lambda +- mu +- nu)/2).
Complex bessel_moment(const BesselMomentParams& p);

/// The same integral by adaptive quadrature ((0,1] through y = e^{-u},
/// [1, inf) through y = 1 + sinh v).
QuadratureResult bessel_moment_quad(const BesselMomentParams& p,
                                    const AccuracyBudget& budget = {1e-11, 1e-300, 2000});

struct TripleTermParams {
  Complex a;
  Complex b;
  Complex c;
  double r = 0.0;
};

/// Gamma((a-b+c)/2) Gamma((a-b-c)/2) Gamma((a+b+c)/2 + ir) Gamma((a+b-c)/2 + ir)
///   / (8 Gamma(a+ir) (2 pi)^{a+ir}),
/// the integral of y^{a+ir} K_{b+ir}(4 pi y) K_c(4 pi y) dy/y.
Complex triple_term(const TripleTermParams& t);

/// Same value through bessel_moment after u = 4 pi y.
Complex triple_term_via_moment(const TripleTermParams& t);

/// How b is formed from the indices. `half_weight` is the consistent choice
/// (b = p - q - w1/2); `literal` reproduces the paper's display b = p - q - w1,
/// c = -ir' + p' - q' - w2, and exists to show that the oracle catches it.
enum class BesselOrderConvention { half_weight, literal };

/// < W(v_{w1}) of spec1, W(v_{w2}) of spec2 > paired with the induced vector
/// y^{1 + i r3} of weight k:
///
///   T = C_1 C_2 int conj(V_1(y)) V_2(y) y^{-1 + i r3} dy/y.
struct LocalIntegralSpec {
  whittaker::WhittakerSpec spec1;
  int w1 = 0;
  whittaker::WhittakerSpec spec2;
  int w2 = 0;
  int k = 0;        // weight of the induced vector
  double r3 = 0.0;  // spectral parameter of the induced vector

  /// spec1, spec2 with r3 = spec1.r (the eigenvalue-aspect configuration).
  static LocalIntegralSpec make(const whittaker::WhittakerSpec& spec1, int w1,
                                const whittaker::WhittakerSpec& spec2, int w2, int k);

  bool selection_rule() const { return w1 - w2 + k == 0; }
};

/// Closed form: 0 when w1 - w2 + k != 0, otherwise
/// C_1 C_2 sum coeff_1 coeff_2 triple_term(a, b, c, r1) with
/// a = 1 + (k1+k2)/2 + p+q+p'+q' (+ i(r3 - r1)), b = p - q - w1/2,
/// c = -i r2 + p' - q' - w2/2. Throws on unpinned columns.
Complex local_integral_T(const LocalIntegralSpec& s,
                         BesselOrderConvention convention = BesselOrderConvention::half_weight);

/// Direct quadrature of the defining integral (ignores the selection rule,
/// which comes from the K-integral, not the y-integral).
QuadratureResult local_integral_T_quad(const LocalIntegralSpec& s,
                                       const AccuracyBudget& budget = {1e-9, 1e-300, 2000});

struct TermExponent {
  int p = 0;
  int q = 0;
  double sigma = 0.0;
};

struct ExponentReport {
  std::vector<TermExponent> terms;
  double max_sigma = 0.0;
  std::vector<std::pair<int, int>> argmax;
  bool extremal = false;
};

/// sigma(p, q) = p - q - w1/2 - m/2 - 1 over index_set(k, m, w1).
ExponentReport exponent_report(int k, int m, int w1);

/// Stirling exponent of a single triple_term with a, b, c from the indices,
/// derived through special::stirling_mod_exponent (independent of the
/// simplified formula in exponent_report).
double term_sigma_stirling(int k, int m, int w1, int p, int q);

/// Calibration constant of the weight-aspect integrals: the paper's closed
/// form for T1 drops 1/(16 pi); both T1 and T2 are reported in that
/// normalization. Frozen once against the quadrature at k = 0, r' = 1.
inline constexpr double kWeightAspectConstant = 16.0 * kPi;

/// Gamma((1+k+-ir')/2) Gamma((1+-ir')/2) / (Gamma(1+k/2)^2 |Gamma(1+ir')|).
Complex weight_T1(int k, double r_prime);

/// kWeightAspectConstant * (2pi)^{k/2} / (Gamma(1+k/2) |Gamma(1+ir')|)
///   * int y^{k/2+1} K_{ir'}(4 pi y) K_{k/2}(4 pi y) dy/y.
QuadratureResult weight_T1_quad(int k, double r_prime,
                                const AccuracyBudget& budget = {1e-8, 1e-300, 2000});

/// kWeightAspectConstant * (2pi)^k / Gamma(k/2+1)^2 * int y^{1+ir'} |W_2(y)|^2 y^{-2} dy/y,
/// with |W_2|^2 expanded over the binomial components and summed as Bessel moments.
Complex weight_T2(int k, double r_prime);

QuadratureResult weight_T2_quad(int k, double r_prime,
                                const AccuracyBudget& budget = {1e-6, 1e-300, 2000});

/// Haar measure on SL(2,C) in NAK coordinates, dg = c dx dy/y^3 dk with dx
/// Lebesgue on C (c = 1) or self-dual for psi(z) = exp(2 pi i tr z) (c = 2).
enum class NMeasure { self_dual, lebesgue };

struct MvCheckConfig {
  double d_max = 36.0;     // radial cutoff (hyperbolic distance)
  double grid_step = 0.05; // spacing of the spherical-function table
  AccuracyBudget budget{1e-9, 1e-300, 4000};
  NMeasure measure = NMeasure::self_dual;
};

struct MvCheckResult {
  double S_direct = 0.0;
  double S_abs_err = 0.0;
  Complex T{};             // local_integral_T (Whittaker-normalized vectors)
  Complex T_unit{};        // T for unit vectors: 32 pi^2 T
  double ratio = 0.0;      // S_direct / (|T_unit|^2 / (4 pi)); NaN if not asserted
  bool asserted = false;   // false when the selection rule kills T
};

/// Spherical check of S = |T|^2/(4pi) for I(0, r1) x I(0, r2) x I(0, r3).
/// A nonzero weight `k` for the third (induced) vector breaks the selection
/// rule; T is then 0 and S is not computed.
MvCheckResult mv_check(double r1, double r2, double r3, const MvCheckConfig& config = {},
                       int k = 0);

}  // namespace sl2c::integrals
