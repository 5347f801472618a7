#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sl2c/su2.hpp"
#include "sl2c/types.hpp"

namespace sl2c::principal {

using su2::Mat2;

/// Principal series label (weight k, spectral parameter r), normalized so
/// that r > 0, or r = 0 and k >= 0.
struct UnitaryParam {
  int k = 0;
  double r = 0.0;

  static UnitaryParam make(int k, double r);
};

/// Unimodular 2x2 complex matrix.
class GroupElement {
 public:
  static GroupElement from_matrix(const Mat2& g, double tol = 1e-12);
  template <typename Rng>
  static GroupElement random(Rng& rng, double max_norm);

  const Mat2& matrix() const { return m_; }

 private:
  explicit GroupElement(const Mat2& g) : m_(g) {}
  Mat2 m_;
};

/// g = n(x) diag(a, 1/a) kappa with n(x) = [[1, x], [0, 1]], a > 0.
struct IwasawaFactors {
  Complex x;
  double a = 1.0;
  su2::Su2Element kappa;

  Mat2 reconstruct() const;
};

IwasawaFactors iwasawa(const Mat2& g);

enum class LieBasis { H, T, Xplus, Xminus, Yplus, Yminus };

Mat2 lie_matrix(LieBasis b);

/// exp of a traceless 2x2 matrix.
Mat2 exp_traceless(const Mat2& X);

/// Function in the weight-k space W_k = { f : f(m(theta) g) = e^{ik theta} f(g) }
/// stored as a finite K-type expansion:
///
///   f(kappa) = sum_l (l+1)^{1/2} < rho_l(kappa) c_l, v_k >,
///
/// so that ||f||^2_{L^2(K)} = sum_l |c_l|^2. Types l run over |k|, |k|+2, ...
class ModelFunction {
 public:
  explicit ModelFunction(int weight = 0) : weight_(weight) {}

  /// Single K-type component.
  static ModelFunction ktype(int weight, int l, const Eigen::VectorXcd& c);

  int weight() const { return weight_; }
  int band_limit() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// Coefficient vector of rho_l (zero-length when absent).
  const Eigen::VectorXcd& component(int l) const;
  void set_component(int l, const Eigen::VectorXcd& c);

  Complex operator()(const Mat2& kappa) const;
  double norm_sq() const;

  /// kappa -> f(kappa k0), i.e. c_l -> rho_l(k0) c_l.
  ModelFunction right_translate(const Mat2& k0) const;

  ModelFunction& operator+=(const ModelFunction& o);
  ModelFunction operator*(Complex s) const;

 private:
  int weight_;
  std::vector<Eigen::VectorXcd> coeffs_;  // indexed by l
};

/// Extension of f to the group in the induced model:
/// F(n a kappa) = a^{2 + 2ir} f(kappa).
Complex induced_extension(const UnitaryParam& p, const ModelFunction& f, const Mat2& g);

/// (I(g) f)(kappa0) = F(kappa0 g), the right-translation action; pointwise, no truncation.
Complex induced_action_value(const UnitaryParam& p, const ModelFunction& f, const Mat2& g,
                             const Mat2& kappa0);

struct ProjectionConfig {
  int max_degree = 16;           // K-types kept in the output
  double tail_tolerance = 1e-6;  // relative tail mass allowed before throwing
};

struct InducedActionResult {
  ModelFunction function;
  double norm_sq = 0.0;    // ||I(g) f||^2 by pointwise quadrature
  double tail_mass = 0.0;  // part of norm_sq outside the kept K-types
};

/// I(g) f re-expanded in K-types up to config.max_degree, projecting with
/// `rule` (which should resolve the output well beyond max_degree). Throws
/// std::runtime_error when the relative tail mass exceeds config.tail_tolerance.
InducedActionResult induced_action(const UnitaryParam& p, const ModelFunction& f,
                                   const Mat2& g, const su2::KQuadratureRule& rule,
                                   const ProjectionConfig& config = {});

/// g = k1 diag(s, 1/s) k2 with k1, k2 in SU(2) and s >= 1 (Cartan decomposition).
struct CartanFactors {
  Mat2 k1;
  double s = 1.0;
  Mat2 k2;
};

CartanFactors cartan(const Mat2& g);

/// ||I(g) f||^2_{L^2(K)} computed pointwise, without truncation. Uses the
/// Cartan decomposition: Haar invariance removes k1, k2 is absorbed into f,
/// |F(kappa d)| does not depend on the first Euler angle and is a trigonometric
/// polynomial in the last one (trapezoid, exact), leaving one adaptive
/// integral over the middle angle.
QuadratureResult induced_norm_sq(const UnitaryParam& p, const ModelFunction& f, const Mat2& g,
                                 const AccuracyBudget& budget = {1e-12, 1e-300, 2000});

/// -r^2 - 1 + k^2/4.
double casimir_eigenvalue(const UnitaryParam& p);

struct CasimirFd {
  Complex value;   // Richardson-extrapolated 4C F at kappa
  Complex coarse;  // step h
  Complex fine;    // step h/2
};

/// Applies 4C = H^2 - T^2 + 2(X+X- + X-X+) + 2(Y+Y- + Y-Y+) to the induced
/// vector by central second differences along exp(tX). The mixed terms use
/// 2(AB + BA) = (A + B)^2 - (A - B)^2. Throws std::runtime_error when the
/// h and h/2 estimates disagree by more than 1%.
CasimirFd casimir_apply_fd(const UnitaryParam& p, const ModelFunction& f, const Mat2& kappa,
                           double h);

/// < I(g) v, w >_{L^2(K)} by K-quadrature.
Complex matrix_coefficient(const UnitaryParam& p, const ModelFunction& v, const ModelFunction& w,
                           const Mat2& g, const su2::KQuadratureRule& rule);

/// Spherical matrix coefficient < I(g) 1, 1 > at g = diag(e^t, e^{-t}) for
/// weight 0. By bi-K-invariance only the middle Euler angle matters, and the
/// remaining integral over cos(beta) is done adaptively. The error target is
/// relative to the integral of the modulus of the integrand.
QuadratureResult spherical_coefficient(double r, double t, const AccuracyBudget& budget = {});

template <typename Rng>
GroupElement GroupElement::random(Rng& rng, double max_norm) {
  // kappa1 diag(s, 1/s) kappa2 with operator norm s <= max_norm.
  std::uniform_real_distribution<double> u(0.0, std::log(max_norm));
  const double s = std::exp(u(rng));
  Mat2 d = Mat2::Zero();
  d(0, 0) = s;
  d(1, 1) = 1.0 / s;
  const auto k1 = su2::Su2Element::random(rng);
  const auto k2 = su2::Su2Element::random(rng);
  return GroupElement(k1.matrix() * d * k2.matrix());
}

}  // namespace sl2c::principal
