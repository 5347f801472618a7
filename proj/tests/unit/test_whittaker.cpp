#include <doctest.h>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "sl2c/special_functions.hpp"
#include "sl2c/whittaker.hpp"

using namespace sl2c;
using namespace sl2c::whittaker;

TEST_CASE("index_set: examples") {
  CHECK(index_set(0, 2, 0) == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}});
  for (int m = 0; m <= 8; m += 2) CHECK(index_set(0, m, m) == std::vector<std::pair<int, int>>{{m / 2, 0}});
  for (int w = -4; w <= 4; w += 2) CHECK(index_set(4, 4, w) == std::vector<std::pair<int, int>>{{0, 0}});
  CHECK_THROWS_AS(index_set(1, 2, 0), std::invalid_argument);
}

TEST_CASE("index_set: brute force for k, m <= 10") {
  for (int k = 0; k <= 10; ++k)
    for (int m = k; m <= 10; m += 2)
      for (int w = -m; w <= m; w += 2) {
        std::vector<std::pair<int, int>> brute;
        for (int p = 0; p <= m; ++p)
          for (int q = 0; q <= m; ++q)
            if (2 * p >= w - k && 2 * q >= -w - k && 2 * (p + q) <= m - k) brute.emplace_back(p, q);
        auto got = index_set(k, m, w);
        std::sort(got.begin(), got.end());
        CHECK(got == brute);
      }
}

TEST_CASE("whittaker_V: pinned closed forms") {
  const double r = 1.7;
  for (int m : {0, 2, 4}) {
    const auto spec = WhittakerSpec::make(0, m, r);
    for (double y : {0.05, 0.3, 1.0}) {
      const Complex expect = std::pow(y, m / 2.0 + 1) * special::bessel_k(Complex(0, -r), 4 * kPi * y);
      CHECK(std::abs(whittaker_V(spec, m, y) - expect) <= 1e-12 * std::abs(expect));
    }
  }
  const int k = 4;
  const auto spec = WhittakerSpec::make(k, k, r);
  for (int j = 0; j <= k; ++j) {
    const int w = k - 2 * j;
    const double y = 0.2;
    const Complex expect = std::pow(y, k / 2.0 + 1) * std::sqrt(boost::math::binomial_coefficient<double>(k, j)) *
                           special::bessel_k(Complex(-w / 2.0, -r), 4 * kPi * y);
    CHECK(std::abs(whittaker_V(spec, w, y) - expect) <= 1e-12 * std::abs(expect));
  }
}

TEST_CASE("whittaker_V: unpinned policy") {
  auto spec = WhittakerSpec::make(0, 2, 1.0);
  CHECK(whittaker_V_scaled(spec, 0, 0.3).has(ResultFlag::coefficients_unpinned));
  CHECK_FALSE(whittaker_V_scaled(spec, 2, 0.3).has(ResultFlag::coefficients_unpinned));
  spec.policy = UnpinnedPolicy::error;
  CHECK_THROWS_AS(whittaker_V(spec, 0, 0.3), std::invalid_argument);
}

TEST_CASE("Bessel orders follow -ir + p - q - w/2") {
  for (int k = 0; k <= 6; ++k)
    for (int m = k; m <= 8; m += 2)
      for (int w = -m; w <= m; w += 2)
        for (auto [p, q] : index_set(k, m, w)) CHECK(term_order(2.5, p, q, w) == Complex(p - q - w / 2.0, -2.5));
}

TEST_CASE("unitary constant and norm") {
  const double r = 1.0;
  CHECK(unitary_constant(0, 0, r) == doctest::Approx(1 / std::abs(special::gamma(Complex(1, r)))).epsilon(1e-13));
  CHECK(unitary_constant(2, 2, r) ==
        doctest::Approx(2 * kPi * std::sqrt(3.0) / std::abs(special::gamma(Complex(2, r)))).epsilon(1e-13));
  CHECK(whittaker_norm_sq(0, 0, r) == doctest::Approx(std::norm(special::gamma(Complex(1, r))) / (32 * kPi * kPi)).epsilon(1e-13));
  for (int m = 0; m <= 8; ++m)
    for (int k = m % 2; k <= m; k += 2)
      for (double rr : {0.5, 2.0, 10.0}) {
        CHECK(unitary_constant(k, m, rr) > 0);
        CHECK(std::abs(std::pow(unitary_constant(k, m, rr), 2) * whittaker_norm_sq(k, m, rr) * 32 * kPi * kPi - 1) < 1e-10);
      }
}

TEST_CASE("norm closed form vs quadrature") {
  for (auto [k, m, r] : std::vector<std::tuple<int, int, double>>{{0, 0, 0.5}, {1, 3, 2.0}, {2, 6, 10.0}, {8, 8, 2.0}}) {
    const auto q = whittaker_norm_sq_quad(k, m, r);
    const double c = whittaker_norm_sq(k, m, r);
    CHECK(std::abs(q.value.real() - c) <= 1e-7 * c);
  }
}
