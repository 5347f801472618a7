#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sl2c {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Raised when an argument falls on a pole of a Gamma factor.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an adaptive rule cannot meet its AccuracyBudget.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejects NaN/inf components. Every public entry point taking a complex
/// parameter funnels it through here.
inline Complex checked(Complex z, const char* what = "argument") {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument(std::string(what) + " must be finite");
  return z;
}

struct AccuracyBudget {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  std::size_t max_subdivisions = 2000;

  void validate() const {
    if (!(rel_tol >= 1e-14))
      throw std::invalid_argument("AccuracyBudget: rel_tol must be >= 1e-14");
    if (!(abs_tol > 0))
      throw std::invalid_argument("AccuracyBudget: abs_tol must be > 0");
    if (max_subdivisions == 0)
      throw std::invalid_argument("AccuracyBudget: max_subdivisions must be positive");
  }
};

/// Flags attached to numerical results.
enum class ResultFlag {
  subnormal,              // value underflowed, only absolute accuracy holds
  precision_limited,      // cancellation limits the attainable relative error
  coefficients_unpinned,  // Whittaker C_{p,q} defaulted to 1
};

std::string to_string(ResultFlag flag);

struct QuadratureResult {
  Complex value{};
  double abs_err = 0.0;
  std::size_t evaluations = 0;
  std::vector<ResultFlag> flags;

  bool has(ResultFlag f) const {
    for (auto x : flags)
      if (x == f) return true;
    return false;
  }
};

}  // namespace sl2c
