#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sl2c/integrals.hpp"

namespace sl2c::verify {

/// One property check: the measured error against its tolerance.
struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;  // failure reason or exception text
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const;
};

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  /// Multiplies every tolerance (the CLI's --tol profile).
  double tolerance_scale = 1.0;
  /// The literal variant reproduces the paper's b = p - q - w1 display.
  integrals::BesselOrderConvention convention = integrals::BesselOrderConvention::half_weight;
};

/// Module suites in run order: special, su2, principal, whittaker, integrals, lfactors.
const std::vector<std::string>& suite_names();

/// True for a module suite or "all".
bool is_suite(const std::string& name);

/// Runs one suite, or every suite for "all". Throws std::invalid_argument for
/// unknown names. Checks never throw: exceptions become failed checks.
std::vector<SuiteReport> run(const std::string& name, const VerifyOptions& options = {});

SuiteReport run_special(const VerifyOptions& options);
SuiteReport run_su2(const VerifyOptions& options);
SuiteReport run_principal(const VerifyOptions& options);
SuiteReport run_whittaker(const VerifyOptions& options);
SuiteReport run_integrals(const VerifyOptions& options);
SuiteReport run_lfactors(const VerifyOptions& options);

/// Least-squares slope of log|y| against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sl2c::verify
