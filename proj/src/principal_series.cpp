#include "sl2c/principal_series.hpp"

#include <algorithm>
#include <sstream>

#include "sl2c/quadrature.hpp"

namespace sl2c::principal {

UnitaryParam UnitaryParam::make(int k, double r) {
  if (!std::isfinite(r)) throw std::invalid_argument("UnitaryParam: r must be finite");
  if (!(r > 0.0 || (r == 0.0 && k >= 0))) {
    std::ostringstream msg;
    msg << "UnitaryParam: (k, r) = (" << k << ", " << r
        << ") is not in normal form (need r > 0, or r = 0 and k >= 0)";
    throw std::invalid_argument(msg.str());
  }
  return {k, r};
}

GroupElement GroupElement::from_matrix(const Mat2& g, double tol) {
  const double det = std::abs(g.determinant() - 1.0);
  if (det > tol) {
    std::ostringstream msg;
    msg << "GroupElement: determinant differs from 1 by " << det;
    throw std::invalid_argument(msg.str());
  }
  return GroupElement(g);
}

Mat2 IwasawaFactors::reconstruct() const {
  Mat2 n = Mat2::Identity();
  n(0, 1) = x;
  Mat2 d = Mat2::Zero();
  d(0, 0) = a;
  d(1, 1) = 1.0 / a;
  return n * d * kappa.matrix();
}

IwasawaFactors iwasawa(const Mat2& g) {
  const double row = std::norm(g(1, 0)) + std::norm(g(1, 1));
  if (!(row > 0.0) || !std::isfinite(row)) throw std::domain_error("iwasawa: singular input");
  const Complex det = g.determinant();
  if (std::abs(det - 1.0) > 1e-10 * std::max(1.0, g.squaredNorm()))
    throw std::domain_error("iwasawa: determinant is not 1");

  IwasawaFactors out;
  out.a = 1.0 / std::sqrt(row);
  const Complex k21 = out.a * g(1, 0);
  const Complex k22 = out.a * g(1, 1);
  Mat2 kappa;
  kappa << std::conj(k22), -std::conj(k21), k21, k22;
  out.kappa = su2::Su2Element::from_matrix(kappa, 1e-10);
  // g kappa^{-1} = [[a, x/a], [0, 1/a]]
  const Mat2 b = g * kappa.adjoint();
  out.x = b(0, 1) * out.a;
  return out;
}

Mat2 lie_matrix(LieBasis b) {
  const Complex i(0.0, 1.0);
  Mat2 m = Mat2::Zero();
  switch (b) {
    case LieBasis::H: m(0, 0) = 1.0, m(1, 1) = -1.0; break;
    case LieBasis::T: m(0, 0) = i, m(1, 1) = -i; break;
    case LieBasis::Xplus: m(0, 1) = 1.0; break;
    case LieBasis::Xminus: m(1, 0) = 1.0; break;
    case LieBasis::Yplus: m(0, 1) = i; break;
    case LieBasis::Yminus: m(1, 0) = -i; break;
  }
  return m;
}

Mat2 exp_traceless(const Mat2& X) {
  // X^2 = -det(X) I, so exp(X) = cosh(s) I + sinh(s)/s X with s^2 = -det X.
  const Complex s2 = -X.determinant();
  const Complex s = std::sqrt(s2);
  Complex c, sh;
  if (std::abs(s) < 1e-6) {
    c = 1.0 + s2 / 2.0 + s2 * s2 / 24.0;
    sh = 1.0 + s2 / 6.0 + s2 * s2 / 120.0;
  } else {
    c = std::cosh(s);
    sh = std::sinh(s) / s;
  }
  return c * Mat2::Identity() + sh * X;
}

ModelFunction ModelFunction::ktype(int weight, int l, const Eigen::VectorXcd& c) {
  ModelFunction f(weight);
  f.set_component(l, c);
  return f;
}

const Eigen::VectorXcd& ModelFunction::component(int l) const {
  static const Eigen::VectorXcd empty;
  if (l < 0 || l >= static_cast<int>(coeffs_.size())) return empty;
  return coeffs_[l];
}

void ModelFunction::set_component(int l, const Eigen::VectorXcd& c) {
  if (l < std::abs(weight_) || (l - weight_) % 2 != 0) {
    std::ostringstream msg;
    msg << "ModelFunction: rho_" << l << " does not occur in weight " << weight_;
    throw std::invalid_argument(msg.str());
  }
  if (c.size() != l + 1) throw std::invalid_argument("ModelFunction: coefficient dimension mismatch");
  if (static_cast<int>(coeffs_.size()) <= l) coeffs_.resize(l + 1);
  coeffs_[l] = c;
}

Complex ModelFunction::operator()(const Mat2& kappa) const {
  Complex s = 0.0;
  for (int l = 0; l < static_cast<int>(coeffs_.size()); ++l) {
    if (coeffs_[l].size() == 0) continue;
    const int row = su2::weight_index(l, weight_);
    s += std::sqrt(static_cast<double>(l + 1)) * (su2::rep_matrix_row(l, kappa, row) * coeffs_[l])(0);
  }
  return s;
}

double ModelFunction::norm_sq() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += c.squaredNorm();
  return s;
}

ModelFunction ModelFunction::right_translate(const Mat2& k0) const {
  ModelFunction out(weight_);
  for (int l = 0; l < static_cast<int>(coeffs_.size()); ++l)
    if (coeffs_[l].size() != 0) out.set_component(l, su2::rep_matrix(l, k0) * coeffs_[l]);
  return out;
}

ModelFunction& ModelFunction::operator+=(const ModelFunction& o) {
  if (o.weight_ != weight_) throw std::invalid_argument("ModelFunction: weight mismatch");
  for (int l = 0; l <= o.band_limit(); ++l) {
    const auto& c = o.component(l);
    if (c.size() == 0) continue;
    const auto& mine = component(l);
    set_component(l, mine.size() == 0 ? Eigen::VectorXcd(c) : Eigen::VectorXcd(mine + c));
  }
  return *this;
}

ModelFunction ModelFunction::operator*(Complex s) const {
  ModelFunction out = *this;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

Complex induced_extension(const UnitaryParam& p, const ModelFunction& f, const Mat2& g) {
  const IwasawaFactors iw = iwasawa(g);
  const Complex power = std::exp(Complex(2.0, 2.0 * p.r) * std::log(iw.a));
  return power * f(iw.kappa.matrix());
}

Complex induced_action_value(const UnitaryParam& p, const ModelFunction& f, const Mat2& g,
                             const Mat2& kappa0) {
  return induced_extension(p, f, kappa0 * g);
}

InducedActionResult induced_action(const UnitaryParam& p, const ModelFunction& f,
                                   const Mat2& g, const su2::KQuadratureRule& rule,
                                   const ProjectionConfig& config) {
  const std::size_t n = rule.nodes.size();
  std::vector<Complex> values(n);
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = induced_extension(p, f, rule.nodes[i] * g);
    norm_sq += rule.weights[i] * std::norm(values[i]);
  }

  InducedActionResult out{ModelFunction(f.weight()), norm_sq, 0.0};
  double kept = 0.0;
  for (int l = std::abs(f.weight()); l <= config.max_degree; l += 2) {
    const int row = su2::weight_index(l, f.weight());
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(l + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::RowVectorXcd rho_row = su2::rep_matrix_row(l, rule.nodes[i], row);
      c += (rule.weights[i] * values[i]) * rho_row.adjoint();
    }
    c *= std::sqrt(static_cast<double>(l + 1));
    kept += c.squaredNorm();
    out.function.set_component(l, c);
  }
  out.tail_mass = std::max(0.0, norm_sq - kept);
  if (out.tail_mass > config.tail_tolerance * norm_sq) {
    std::ostringstream msg;
    msg << "induced_action: relative tail mass " << out.tail_mass / norm_sq
        << " beyond degree " << config.max_degree << " exceeds " << config.tail_tolerance;
    throw std::runtime_error(msg.str());
  }
  return out;
}

CartanFactors cartan(const Mat2& g) {
  Eigen::JacobiSVD<Mat2> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Complex det_u = svd.matrixU().determinant();
  // A scalar phase moves det U to 1; it commutes with the singular values,
  // and det g = 1 then forces det of the right factor to 1 as well.
  const Complex phase = std::sqrt(std::conj(det_u) / std::abs(det_u));
  CartanFactors out;
  out.k1 = svd.matrixU() * phase;
  out.s = svd.singularValues()(0);
  out.k2 = svd.matrixV().adjoint() / phase;
  return out;
}

QuadratureResult induced_norm_sq(const UnitaryParam& p, const ModelFunction& f, const Mat2& g,
                                 const AccuracyBudget& budget) {
  const CartanFactors c = cartan(g);
  const ModelFunction f2 = f.right_translate(c.k2);
  const double s2 = c.s * c.s;
  Mat2 d = Mat2::Zero();
  d(0, 0) = c.s;
  d(1, 1) = 1.0 / c.s;

  // gamma enters as a right torus factor; |f2|^2 has frequencies below band + 1.
  const int n_gamma = 2 * std::max(0, f.band_limit()) + 2;
  auto gamma_average = [&](double beta) {
    double acc = 0.0;
    for (int j = 0; j < n_gamma; ++j) {
      const double gamma = 4.0 * kPi * j / n_gamma;
      const Mat2 kappa = su2::Su2Element::from_euler(0.0, beta, gamma).matrix();
      acc += std::norm(induced_extension(p, f2, kappa * d));
    }
    return acc / n_gamma;
  };

  if (s2 - 1.0 / s2 < 1e-3) {
    // Nearly unitary g: integrate over x = cos(beta) directly.
    auto integrand = [&](double x) -> Complex { return 0.5 * gamma_average(std::acos(x)); };
    return quad::gauss_kronrod(integrand, -1.0, 1.0, budget);
  }
  // u = a^{-2} = sin^2(beta/2) s^2 + cos^2(beta/2) s^{-2} is affine in x = cos(beta);
  // v = log u spreads the peak near u = s^{-2}: dx/2 = e^v dv / (s^2 - s^{-2}).
  const double span = s2 - 1.0 / s2;
  auto integrand = [&](double v) -> Complex {
    const double u = std::exp(v);
    const double x = std::clamp((s2 + 1.0 / s2 - 2.0 * u) / span, -1.0, 1.0);
    return gamma_average(std::acos(x)) * u / span;
  };
  return quad::gauss_kronrod(integrand, -std::log(s2), std::log(s2), budget);
}

double casimir_eigenvalue(const UnitaryParam& p) {
  return -p.r * p.r - 1.0 + 0.25 * p.k * p.k;
}

namespace {

// Sum of +-(d/dt)^2 F(kappa exp(tX)) over the six squared directions of 4C.
Complex casimir_second_differences(const UnitaryParam& p, const ModelFunction& f,
                                   const Mat2& kappa, double h) {
  using B = LieBasis;
  const Mat2 H = lie_matrix(B::H), T = lie_matrix(B::T);
  const Mat2 Xp = lie_matrix(B::Xplus), Xm = lie_matrix(B::Xminus);
  const Mat2 Yp = lie_matrix(B::Yplus), Ym = lie_matrix(B::Yminus);
  const std::pair<Mat2, double> directions[] = {
      {H, 1.0},       {T, -1.0},       {Xp + Xm, 1.0},
      {Xp - Xm, -1.0}, {Yp + Ym, 1.0}, {Yp - Ym, -1.0},
  };
  const Complex center = induced_extension(p, f, kappa);
  Complex total = 0.0;
  for (const auto& [X, sign] : directions) {
    const Complex plus = induced_extension(p, f, kappa * exp_traceless(h * X));
    const Complex minus = induced_extension(p, f, kappa * exp_traceless(-h * X));
    total += sign * (plus - 2.0 * center + minus) / (h * h);
  }
  return total;
}

}  // namespace

CasimirFd casimir_apply_fd(const UnitaryParam& p, const ModelFunction& f, const Mat2& kappa,
                           double h) {
  if (!(h > 0.0)) throw std::invalid_argument("casimir_apply_fd: step must be positive");
  CasimirFd out;
  out.coarse = casimir_second_differences(p, f, kappa, h);
  out.fine = casimir_second_differences(p, f, kappa, h / 2);
  out.value = (4.0 * out.fine - out.coarse) / 3.0;
  const double scale = std::max(std::abs(out.fine), 1e-300);
  if (std::abs(out.coarse - out.fine) > 1e-2 * scale) {
    std::ostringstream msg;
    msg << "casimir_apply_fd: step " << h << " too large (Richardson estimates differ by "
        << std::abs(out.coarse - out.fine) / scale << " relative)";
    throw std::runtime_error(msg.str());
  }
  return out;
}

Complex matrix_coefficient(const UnitaryParam& p, const ModelFunction& v, const ModelFunction& w,
                           const Mat2& g, const su2::KQuadratureRule& rule) {
  return su2::k_quadrature(
      [&](const Mat2& kappa) { return induced_extension(p, v, kappa * g) * std::conj(w(kappa)); },
      rule);
}

QuadratureResult spherical_coefficient(double r, double t, const AccuracyBudget& budget) {
  t = std::abs(t);  // diag(e^{-t}, e^{t}) is K-conjugate to diag(e^t, e^{-t})
  const double up = std::exp(2.0 * t);
  const double down = std::exp(-2.0 * t);
  const Complex expo(-1.0, -r);
  // a(kappa g)^{-2} = u = sin^2(beta/2) e^{2t} + cos^2(beta/2) e^{-2t} with x = cos(beta),
  // and the integrand is a(kappa g)^{2+2ir} = u^{-1-ir} against dx/2.
  // Accuracy is measured against the integral of the modulus, since the
  // coefficient itself has zeros in t.
  AccuracyBudget b = budget;
  if (t < 0.05) {
    b.abs_tol = std::max(budget.abs_tol, budget.rel_tol);
    auto integrand = [&](double x) -> Complex {
      const double u = 0.5 * ((1.0 - x) * up + (1.0 + x) * down);
      return 0.5 * std::exp(expo * std::log(u));
    };
    return quad::gauss_kronrod(integrand, -1.0, 1.0, b);
  }
  // u is affine in x; with v = log u the mass concentrated near u = e^{-2t}
  // spreads evenly: dx/2 = du / (e^{2t} - e^{-2t}).
  const double jac = 1.0 / (up - down);
  auto integrand = [&](double v) -> Complex { return jac * std::exp(Complex(0.0, -r * v)); };
  b.abs_tol = std::max(budget.abs_tol, budget.rel_tol * 4.0 * t * jac);
  return quad::gauss_kronrod(integrand, -2.0 * t, 2.0 * t, b);
}

}  // namespace sl2c::principal
