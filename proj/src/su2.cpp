#include "sl2c/su2.hpp"

#include <sstream>

#include "sl2c/quadrature.hpp"

namespace sl2c::su2 {

Su2Element Su2Element::from_matrix(const Mat2& g, double tol) {
  const double unitarity = (g * g.adjoint() - Mat2::Identity()).norm();
  const double det = std::abs(g.determinant() - 1.0);
  if (unitarity > tol || det > tol) {
    std::ostringstream msg;
    msg << "Su2Element: not in SU(2) (unitarity defect " << unitarity << ", det defect " << det << ")";
    throw std::invalid_argument(msg.str());
  }
  return Su2Element(g);
}

Su2Element Su2Element::from_euler(double alpha, double beta, double gamma) {
  Mat2 w;
  w << std::cos(beta / 2), -std::sin(beta / 2), std::sin(beta / 2), std::cos(beta / 2);
  return Su2Element(torus(alpha / 2) * w * torus(gamma / 2));
}

Mat2 torus(double theta) {
  Mat2 t = Mat2::Zero();
  t(0, 0) = std::polar(1.0, theta);
  t(1, 1) = std::polar(1.0, -theta);
  return t;
}

int weight_index(int m, int t) {
  if (m < 0 || t > m || t < -m || (m - t) % 2 != 0) {
    std::ostringstream msg;
    msg << "weight " << t << " is not a weight of rho_" << m;
    throw std::invalid_argument(msg.str());
  }
  return (m - t) / 2;
}

Eigen::MatrixXcd dual_rep_matrix(int m, const Mat2& g) {
  return rep_matrix(m, Mat2(g.inverse())).transpose();
}

Complex psi_star(int m, int j, const Mat2& g) {
  const int row = weight_index(m, -m);
  const int col = weight_index(m, j);
  return dual_rep_matrix(m, g)(row, col);
}

KFunction ktype_embed(int m, Eigen::VectorXcd v) {
  if (v.size() != m + 1) throw std::invalid_argument("ktype_embed: vector has wrong dimension");
  const double scale = std::sqrt(static_cast<double>(m + 1));
  return [m, v = std::move(v), scale](const Mat2& g) -> Complex {
    // < rho(g) v, v_m > is the v_m-component of rho(g) v.
    return scale * (rep_matrix(m, g).row(0) * v)(0);
  };
}

KQuadratureRule KQuadratureRule::with_exactness(int degree) {
  if (degree < 0) throw std::invalid_argument("KQuadratureRule: degree must be non-negative");
  // Harmonics e^{i j alpha / 2} with |j| <= degree vanish under an (degree+1)-point
  // trapezoid over [0, 4 pi). After the torus averages, only zonal terms
  // P_{l/2}(cos beta) remain, so degree/2 + 1 Legendre nodes are ample.
  const int n_torus = degree + 1;
  const int n_beta = degree / 2 + 1;
  const auto gl = quad::gauss_legendre(n_beta);

  KQuadratureRule rule;
  rule.exactness_degree = degree;
  rule.nodes.reserve(static_cast<std::size_t>(n_torus) * n_torus * n_beta);
  const double torus_w = 1.0 / (static_cast<double>(n_torus) * n_torus);
  for (int ia = 0; ia < n_torus; ++ia) {
    const double alpha = 4.0 * kPi * ia / n_torus;
    for (int ib = 0; ib < n_beta; ++ib) {
      const double beta = std::acos(gl.nodes[ib]);
      for (int ig = 0; ig < n_torus; ++ig) {
        const double gamma = 4.0 * kPi * ig / n_torus;
        rule.nodes.push_back(Su2Element::from_euler(alpha, beta, gamma).matrix());
        rule.weights.push_back(0.5 * gl.weights[ib] * torus_w);
      }
    }
  }
  return rule;
}

void DeltaTruncation::validate() const {
  if (order < std::abs(weight) || (order - weight) % 2 != 0) {
    std::ostringstream msg;
    msg << "DeltaTruncation: order " << order << " incompatible with weight " << weight;
    throw std::invalid_argument(msg.str());
  }
}

Complex truncated_delta_value(const DeltaTruncation& d, const Mat2& g) {
  d.validate();
  const Mat2 inv = g.inverse();
  Complex s = 0.0;
  for (int l = std::abs(d.weight); l <= d.order; l += 2) {
    const int i = weight_index(l, -d.weight);
    // beta_l = [rho_l^*(g)]_{-k,-k} = [rho_l(g)^{-1}]_{-k,-k}
    s += static_cast<double>(l + 1) * rep_matrix(l, inv)(i, i);
  }
  return s;
}

KFunction truncated_delta(const DeltaTruncation& d) {
  d.validate();
  return [d](const Mat2& g) { return truncated_delta_value(d, g); };
}

}  // namespace sl2c::su2
