#pragma once

#include <functional>
#include <vector>

#include "sl2c/types.hpp"

namespace sl2c::quad {

using Integrand = std::function<Complex(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b]. The interval with the
/// largest error estimate is bisected until the total estimate drops below
/// max(abs_tol, rel_tol * |I|) or max_subdivisions is reached.
///
/// The per-interval error is |K15 - G7|, without QUADPACK's rescaling, so the
/// reported abs_err is conservative for smooth integrands.
QuadratureResult gauss_kronrod(const Integrand& f, double a, double b,
                               const AccuracyBudget& budget,
                               bool throw_on_exhaustion = true);

struct NodesWeights {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
NodesWeights gauss_legendre(int n);

/// Truncation window for integrals over (0, inf). The integrand is taken to be
/// negligible outside [y_min, y_max].
struct HalfLineWindow {
  double y_min = 1e-40;
  double y_max = 60.0;
};

/// Integral over (0, inf) split at y = 1: (0, 1] through y = exp(-u) and
/// [1, inf) through y = 1 + sinh(v). Each piece is handled by gauss_kronrod.
QuadratureResult positive_reals(const Integrand& f, const AccuracyBudget& budget,
                                HalfLineWindow window = {});

}  // namespace sl2c::quad
