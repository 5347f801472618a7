#include <doctest.h>

#include <random>

#include "sl2c/su2.hpp"

using namespace sl2c;
using namespace sl2c::su2;

TEST_CASE("rep_matrix: identity, defining rep, torus") {
  for (int m = 0; m <= 6; ++m) CHECK((rep_matrix(m, Mat2(Mat2::Identity())) - Eigen::MatrixXcd::Identity(m + 1, m + 1)).norm() < 1e-14);
  std::mt19937_64 rng(1);
  const auto g = Su2Element::random(rng);
  CHECK((rep_matrix(1, g) - g.matrix()).norm() < 1e-14);
  const double th = 0.37;
  const auto d = rep_matrix(4, torus(th));
  for (int i = 0; i <= 4; ++i) CHECK(std::abs(d(i, i) - std::polar(1.0, (4 - 2 * i) * th)) < 1e-14);
}

TEST_CASE("rep_matrix: homomorphism and unitarity") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = Su2Element::random(rng), h = Su2Element::random(rng);
    const int m = trial % 13;
    CHECK((rep_matrix(m, g * h) - rep_matrix(m, g) * rep_matrix(m, h)).norm() < 1e-10);
    const auto R = rep_matrix(m, g);
    CHECK((R * R.adjoint() - Eigen::MatrixXcd::Identity(m + 1, m + 1)).norm() < 1e-10);
  }
}

TEST_CASE("rep_matrix_row agrees with rep_matrix") {
  std::mt19937_64 rng(3);
  const Mat2 g = Su2Element::random(rng).matrix() * 1.7;
  const auto R = rep_matrix(6, g);
  for (int r = 0; r <= 6; ++r) CHECK((rep_matrix_row(6, g, r) - R.row(r)).norm() < 1e-12);
}

TEST_CASE("psi_star") {
  for (int m = 0; m <= 4; ++m)
    for (int j = -m; j <= m; j += 2)
      CHECK(std::abs(psi_star(m, j, Mat2::Identity()) - (j == -m ? 1.0 : 0.0)) < 1e-14);
  const auto rule = KQuadratureRule::with_exactness(16);
  for (int m = 1; m <= 6; ++m) {
    const Complex v = k_quadrature([&](const Mat2& g) { return std::norm(psi_star(m, m - 2, g)); }, rule);
    CHECK(std::abs(v - 1.0 / (m + 1)) < 1e-12);
  }
  CHECK_THROWS_AS(psi_star(2, 1, Mat2::Identity()), std::invalid_argument);
}

TEST_CASE("k_quadrature: probability measure and orthogonality") {
  const auto rule = KQuadratureRule::with_exactness(16);
  double s = 0;
  for (double w : rule.weights) s += w;
  CHECK(std::abs(s - 1) < 1e-13);
  for (int l = 1; l <= 16; ++l)
    CHECK(std::abs(k_quadrature([&](const Mat2& g) { return rep_matrix(l, g)(0, l / 2); }, rule)) < 1e-12);
}

TEST_CASE("Schur orthogonality, m <= 8") {
  const auto rule = KQuadratureRule::with_exactness(16);
  for (int m = 0; m <= 8; ++m) {
    for (int s = 0; s <= m; ++s)
      for (int t = 0; t <= m; t += std::max(1, m / 2)) {
        const Complex v = k_quadrature([&](const Mat2& g) { return std::norm(rep_matrix(m, g)(t, s)); }, rule);
        CHECK(std::abs(v - 1.0 / (m + 1)) < 1e-10);
      }
  }
}

TEST_CASE("ktype_embed: isometry and M-equivariance") {
  const auto rule = KQuadratureRule::with_exactness(12);
  Eigen::VectorXcd v(4);
  v << Complex(0.3, 0.1), 0.5, Complex(0, -0.2), 0.7;
  const auto f = ktype_embed(3, v);
  const Complex n = k_quadrature([&](const Mat2& g) { return std::norm(f(g)); }, rule);
  CHECK(std::abs(n - v.squaredNorm()) < 1e-12);
  CHECK(std::abs(ktype_embed(3, Eigen::VectorXcd::Zero(4))(Mat2::Identity())) == 0.0);
  std::mt19937_64 rng(4);
  const Mat2 k = Su2Element::random(rng).matrix();
  const double th = 0.41;
  const Complex ratio = f(Mat2(torus(th) * k)) / f(k);
  CHECK(std::abs(std::abs(ratio) - 1) < 1e-12);
  CHECK(std::abs(std::remainder(std::arg(ratio) - 3 * th, 2 * kPi)) < 1e-12);
}

TEST_CASE("truncated_delta") {
  const auto d0 = truncated_delta({0, 0});
  CHECK(std::abs(d0(Mat2::Identity()) - 1.0) < 1e-15);
  CHECK(std::abs(truncated_delta_value({2, 6}, Mat2::Identity()) - Complex(3 + 5 + 7)) < 1e-12);
  CHECK_THROWS_AS(truncated_delta({3, 2}), std::invalid_argument);
  CHECK_THROWS_AS(truncated_delta({1, 4}), std::invalid_argument);
}

TEST_CASE("truncated_delta: reproducing property") {
  // Bilinear pairing: int h(k) delta_N(k) dk = h(e) for h in the span of
  // matrix coefficients [rho_l(k)]_{weight -k, j} (left weight -k).
  const int weight = 2, N = 6;
  const auto rule = KQuadratureRule::with_exactness(2 * N + 2);
  const auto delta = truncated_delta({weight, N});
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<std::tuple<int, int, Complex>> terms;
    for (int l = weight; l <= N; l += 2) terms.emplace_back(l, static_cast<int>(rng() % (l + 1)), Complex(n(rng), n(rng)));
    auto h = [&](const Mat2& g) {
      Complex s = 0;
      for (auto [l, col, c] : terms) s += c * rep_matrix(l, g)(weight_index(l, -weight), col);
      return s;
    };
    const Complex lhs = k_quadrature([&](const Mat2& g) { return h(g) * delta(g); }, rule);
    CHECK(std::abs(lhs - h(Mat2::Identity())) < 1e-10);
  }
}
