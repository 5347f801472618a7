#include <doctest.h>

#include <random>

#include "sl2c/principal_series.hpp"

using namespace sl2c;
using namespace sl2c::principal;

namespace {
Eigen::VectorXcd random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(d(rng), d(rng));
  return v;
}
}  // namespace

TEST_CASE("UnitaryParam normal form") {
  CHECK_NOTHROW(UnitaryParam::make(2, 0.0));
  CHECK_NOTHROW(UnitaryParam::make(-1, 0.5));
  CHECK_THROWS_AS(UnitaryParam::make(-2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(UnitaryParam::make(0, -1.0), std::invalid_argument);
}

TEST_CASE("iwasawa: spec examples") {
  Mat2 g;
  g << 2, 0, 0, 0.5;
  auto f = iwasawa(g);
  CHECK(std::abs(f.x) < 1e-14);
  CHECK(f.a == doctest::Approx(2.0));
  CHECK((f.kappa.matrix() - Mat2::Identity()).norm() < 1e-14);

  g << 1, 0, 1, 1;
  f = iwasawa(g);
  Mat2 k;
  k << 1, -1, 1, 1;
  k /= std::sqrt(2.0);
  CHECK(f.a == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(std::abs(f.x - 0.5) < 1e-14);
  CHECK((f.kappa.matrix() - k).norm() < 1e-14);

  std::mt19937_64 rng(11);
  const Mat2 u = su2::Su2Element::random(rng).matrix();
  f = iwasawa(u);
  CHECK(std::abs(f.x) < 1e-12);
  CHECK(f.a == doctest::Approx(1.0));
  CHECK((f.kappa.matrix() - u).norm() < 1e-12);
}

TEST_CASE("iwasawa: reconstruction") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const Mat2 g = GroupElement::random(rng, 5.0).matrix();
    CHECK((iwasawa(g).reconstruct() - g).norm() < 1e-10);
  }
  CHECK_THROWS(GroupElement::from_matrix(Mat2::Zero()));
}

TEST_CASE("Lie basis and Casimir eigenvalue") {
  CHECK(std::abs(lie_matrix(LieBasis::H).trace()) < 1e-15);
  CHECK(casimir_eigenvalue(UnitaryParam::make(0, 1.0)) == doctest::Approx(-2.0));
  CHECK(casimir_eigenvalue(UnitaryParam::make(2, 0.0)) == doctest::Approx(0.0));
  CHECK(casimir_eigenvalue({0, -3.0}) == casimir_eigenvalue({0, 3.0}));
}

TEST_CASE("Casimir by finite differences matches -r^2 - 1 + k^2/4") {
  std::mt19937_64 rng(13);
  for (auto [k, r] : std::vector<std::pair<int, double>>{{0, 1.0}, {2, 1.5}, {4, 0.7}}) {
    const auto p = UnitaryParam::make(k, r);
    ModelFunction f(k);
    for (int l = std::abs(k); l <= std::abs(k) + 4; l += 2) f.set_component(l, random_vector(l + 1, rng));
    for (int trial = 0; trial < 2; ++trial) {
      const Mat2 kappa = su2::Su2Element::random(rng).matrix();
      const auto fd = casimir_apply_fd(p, f, kappa, 1e-2);
      const Complex ratio = fd.value / f(kappa);
      CHECK(std::abs(ratio / (4 * casimir_eigenvalue(p)) - 1.0) < 1e-3);
    }
  }
}

TEST_CASE("induced action: identity, unitarity, composition") {
  std::mt19937_64 rng(14);
  const auto p = UnitaryParam::make(2, 0.8);
  ModelFunction f(2);
  f.set_component(2, random_vector(3, rng));
  f.set_component(4, random_vector(5, rng));
  const auto rule = su2::KQuadratureRule::with_exactness(40);
  const auto id = induced_action(p, f, Mat2::Identity(), rule);
  const Mat2 k0 = su2::Su2Element::random(rng).matrix();
  CHECK(std::abs(id.function(k0) - f(k0)) < 1e-10);

  for (int i = 0; i < 5; ++i) {
    const Mat2 g = GroupElement::random(rng, 5.0).matrix();
    const auto n = induced_norm_sq(p, f, g);
    CHECK(std::abs(n.value.real() - f.norm_sq()) < 1e-8 * f.norm_sq());
  }

  // I(g1) I(g2) f = I(g1 g2) f: evaluated pointwise through the extension.
  const Mat2 g1 = GroupElement::random(rng, 1.5).matrix();
  const Mat2 g2 = GroupElement::random(rng, 1.5).matrix();
  const auto inner = induced_action(p, f, g2, su2::KQuadratureRule::with_exactness(56), {27, 1e-3});
  const Complex lhs = induced_action_value(p, inner.function, g1, k0);
  const Complex rhs = induced_action_value(p, f, Mat2(g1 * g2), k0);
  CHECK(std::abs(lhs - rhs) < 1e-6 * std::sqrt(f.norm_sq()));
}

TEST_CASE("matrix coefficients") {
  std::mt19937_64 rng(15);
  const auto p = UnitaryParam::make(0, 1.2);
  ModelFunction v(0);
  v.set_component(0, Eigen::VectorXcd::Ones(1));
  const auto rule = su2::KQuadratureRule::with_exactness(48);
  CHECK(std::abs(matrix_coefficient(p, v, v, Mat2::Identity(), rule) - 1.0) < 1e-12);
  // bi-K-invariance and agreement with the radial formula
  Mat2 d = Mat2::Zero();
  const double t = 0.4;
  d(0, 0) = std::exp(t);
  d(1, 1) = std::exp(-t);
  const Complex rad = matrix_coefficient(p, v, v, d, rule);
  const auto sc = spherical_coefficient(1.2, t);
  CHECK(std::abs(rad - sc.value) < 1e-8);
  CHECK(std::abs(sc.value.imag()) < 1e-12);
  CHECK(std::abs(rad) <= 1.0 + 1e-12);
  const Mat2 k1 = su2::Su2Element::random(rng).matrix(), k2 = su2::Su2Element::random(rng).matrix();
  CHECK(std::abs(matrix_coefficient(p, v, v, Mat2(k1 * d * k2), rule) - rad) < 1e-8);
}

TEST_CASE("spherical coefficient at t = 0 is 1, decays with t") {
  CHECK(std::abs(spherical_coefficient(0.8, 0.0).value - 1.0) < 1e-12);
  CHECK(std::abs(spherical_coefficient(0.8, 3.0).value) < 0.1);
}
