#pragma once

#include <vector>

#include "sl2c/types.hpp"

namespace sl2c::lfactors {

/// prod_j Gamma(s + mu_j) at a complex place. Each shift is affine in the
/// growth parameter r_n: mu_j = base_j + i * r_coeff_j * r_n; r_coeff_j
/// records that dependence so the conductor slope can be probed.
struct GammaFactorSet {
  std::vector<Complex> shifts;
  std::vector<double> r_coeffs;  // same length as shifts
  double r_n = 0.0;              // growth parameter the shifts were built at

  /// The same set rebuilt at another value of r_n.
  GammaFactorSet at(double r_n_new) const;
};

/// {+-i r_n +- i r'/2 + |k|/2 + |k'|/4} (4 shifts) and {+-i r'/2 + |k'|/4},
/// each twice (4 shifts).
GammaFactorSet triple_gamma_cuspidal(int k, int k_prime, double r_n, double r_prime);

/// {i t + |k'|/4} twice and {+-i r_n + i t + |k|/2 + |k'|/4}.
GammaFactorSet triple_gamma_eisenstein(int k, int k_prime, double r_n, double t);

struct ConductorReport {
  double value = 1.0;      // prod_j (1 + |s + mu_j|)^2
  double log_value = 0.0;
  double slope = 0.0;      // d log C / d log r_n at r_n (central difference)
};

/// Analytic conductor with each complex-place Gamma counted squared.
ConductorReport analytic_conductor(const GammaFactorSet& g, Complex s, double rel_step = 1e-4);

}  // namespace sl2c::lfactors
