#pragma once

#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sl2c/types.hpp"

namespace sl2c::su2 {

using Mat2 = Eigen::Matrix2cd;

/// Element of SU(2), validated on construction.
class Su2Element {
 public:
  Su2Element() : m_(Mat2::Identity()) {}

  /// Throws std::invalid_argument unless g is unitary with det 1 to `tol`.
  static Su2Element from_matrix(const Mat2& g, double tol = 1e-12);

  /// m(alpha/2) w(beta) m(gamma/2), with m(phi) = diag(e^{i phi}, e^{-i phi})
  /// and w(beta) the real rotation by beta/2.
  static Su2Element from_euler(double alpha, double beta, double gamma);

  /// Haar-distributed sample (normalized Gaussian quaternion).
  template <typename Rng>
  static Su2Element random(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    double q[4];
    double s = 0.0;
    for (double& v : q) {
      v = n(rng);
      s += v * v;
    }
    s = std::sqrt(s);
    const Complex a(q[0] / s, q[3] / s);
    const Complex b(q[2] / s, q[1] / s);
    Mat2 g;
    g << a, -std::conj(b), b, std::conj(a);
    return Su2Element(g);
  }

  const Mat2& matrix() const { return m_; }
  Su2Element inverse() const { return Su2Element(m_.adjoint()); }
  Su2Element operator*(const Su2Element& o) const { return Su2Element(m_ * o.m_); }

 private:
  explicit Su2Element(const Mat2& g) : m_(g) {}
  Mat2 m_;
};

/// diag(e^{i theta}, e^{-i theta}), the torus M.
Mat2 torus(double theta);

/// Position of weight t in the basis of rho_m, ordered t = m, m-2, ..., -m.
int weight_index(int m, int t);

/// rho_m(g) on degree-m homogeneous polynomials P(x, y), (rho(g)P)(u) = P(g^T u),
/// in the orthonormal basis x^a y^b / sqrt(a! b!) with weight t = a - b.
/// Works for any complex 2x2 g (holomorphic in the entries); unitary when g is.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> rep_matrix(
    int m, const Eigen::Matrix<std::complex<Scalar>, 2, 2>& g) {
  using C = std::complex<Scalar>;
  if (m < 0) throw std::invalid_argument("rep_matrix: m must be non-negative");
  const int dim = m + 1;
  // Integer powers of each entry; std::pow(0, 0) is not reliably 1 for complex.
  auto powers = [m](C z) {
    std::vector<C> p(m + 1);
    p[0] = C(1);
    for (int i = 1; i <= m; ++i) p[i] = p[i - 1] * z;
    return p;
  };
  const auto p11 = powers(g(0, 0)), p12 = powers(g(0, 1));
  const auto p21 = powers(g(1, 0)), p22 = powers(g(1, 1));

  std::vector<Scalar> fact(m + 1);
  fact[0] = Scalar(1);
  for (int i = 1; i <= m; ++i) fact[i] = fact[i - 1] * Scalar(i);
  auto binom = [&](int n, int k) { return fact[n] / (fact[k] * fact[n - k]); };

  Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> out(dim, dim);
  for (int col = 0; col < dim; ++col) {
    const int a = m - col;  // exponent of x in the source monomial
    const int b = col;
    for (int row = 0; row < dim; ++row) {
      const int a2 = m - row;
      C s(0);
      // (g11 x + g21 y)^a (g12 x + g22 y)^b, collect x^{a2}: i from the first factor.
      const int i_lo = std::max(0, a2 - b);
      const int i_hi = std::min(a, a2);
      for (int i = i_lo; i <= i_hi; ++i) {
        const int j = a2 - i;
        s += binom(a, i) * binom(b, j) * p11[i] * p21[a - i] * p12[j] * p22[b - j];
      }
      out(row, col) = s * std::sqrt(fact[a2] * fact[m - a2] / (fact[a] * fact[b]));
    }
  }
  return out;
}

inline Eigen::MatrixXcd rep_matrix(int m, const Su2Element& g) { return rep_matrix(m, g.matrix()); }

/// One row of rep_matrix(m, g) (the component of weight m - 2 row), in O(m^2).
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 1, Eigen::Dynamic> rep_matrix_row(
    int m, const Eigen::Matrix<std::complex<Scalar>, 2, 2>& g, int row) {
  using C = std::complex<Scalar>;
  if (m < 0 || row < 0 || row > m) throw std::invalid_argument("rep_matrix_row: bad index");
  auto powers = [m](C z) {
    std::vector<C> p(m + 1);
    p[0] = C(1);
    for (int i = 1; i <= m; ++i) p[i] = p[i - 1] * z;
    return p;
  };
  const auto p11 = powers(g(0, 0)), p12 = powers(g(0, 1));
  const auto p21 = powers(g(1, 0)), p22 = powers(g(1, 1));
  std::vector<Scalar> fact(m + 1);
  fact[0] = Scalar(1);
  for (int i = 1; i <= m; ++i) fact[i] = fact[i - 1] * Scalar(i);
  auto binom = [&](int n, int k) { return fact[n] / (fact[k] * fact[n - k]); };

  Eigen::Matrix<C, 1, Eigen::Dynamic> out(m + 1);
  const int a2 = m - row;
  for (int col = 0; col <= m; ++col) {
    const int a = m - col;
    const int b = col;
    C s(0);
    const int i_lo = std::max(0, a2 - b);
    const int i_hi = std::min(a, a2);
    for (int i = i_lo; i <= i_hi; ++i) {
      const int j = a2 - i;
      s += binom(a, i) * binom(b, j) * p11[i] * p21[a - i] * p12[j] * p22[b - j];
    }
    out(col) = s * std::sqrt(fact[a2] * fact[m - a2] / (fact[a] * fact[b]));
  }
  return out;
}

/// Contragredient rho_m^*(g) = (rho_m(g)^{-1})^T in the dual basis v_t^*,
/// indexed like rho_m (v_t^* has M-weight -t).
Eigen::MatrixXcd dual_rep_matrix(int m, const Mat2& g);

/// psi_j^*(g) = < rho_m^*(g) v_j^*, v_{-m}^* >.
Complex psi_star(int m, int j, const Mat2& g);

using KFunction = std::function<Complex(const Mat2&)>;

/// k -> (m+1)^{1/2} < rho_m(k) v, v_m >.
KFunction ktype_embed(int m, Eigen::VectorXcd v);

/// Product rule on SU(2) in Euler angles: trapezoid in alpha and gamma over
/// [0, 4 pi), Gauss-Legendre in cos(beta). Weights sum to 1.
struct KQuadratureRule {
  std::vector<Mat2> nodes;
  std::vector<double> weights;
  int exactness_degree = 0;

  /// Integrates every matrix coefficient of rho_l, l <= degree, exactly.
  static KQuadratureRule with_exactness(int degree);
};

template <typename F>
Complex k_quadrature(const F& f, const KQuadratureRule& rule) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * Complex(f(rule.nodes[i]));
  return s;
}

struct DeltaTruncation {
  int weight = 0;
  int order = 0;

  void validate() const;
};

/// delta_N(g) = sum over l = |k|, |k|+2, ..., N of (l+1) beta_l(g),
/// beta_l(g) = < rho_l^*(g) u_l^*, u_l^* > with u_l^* = v_{-k}^* the unit
/// weight-k vector of rho_l^*.
Complex truncated_delta_value(const DeltaTruncation& d, const Mat2& g);

KFunction truncated_delta(const DeltaTruncation& d);

}  // namespace sl2c::su2
