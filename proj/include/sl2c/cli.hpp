#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sl2c/types.hpp"

namespace sl2c::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

/// Bad command line, unknown operation, or a params document that does not
/// match the operation's schema. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ResultRecord {
  std::string op;
  Json params;
  Complex value{};
  std::optional<double> abs_err;
  std::vector<std::string> flags;
  Json extra = Json::object();          // structured outputs (e.g. exponent reports)
  std::optional<double> wall_time_ms;   // only with --timing, keeps output deterministic
};

struct EvalContext {
  double tolerance_scale = 1.0;  // from --tol
};

/// Kinds of parameter fields understood by the schema checker.
enum class FieldKind { integer, real, complex, whittaker_spec, gamma_args, euler_angles, matrix };

struct Field {
  std::string name;
  FieldKind kind;
  bool required = true;
};

struct Operation {
  std::string summary;
  std::vector<Field> fields;
  std::function<ResultRecord(const Json& params, const EvalContext& ctx)> run;
};

/// Every operation reachable through eval/scan, keyed by name.
const std::map<std::string, Operation>& registry();

/// Checks `params` against the schema of `op`; throws UsageError naming the field.
void validate_params(const std::string& op, const Json& params);

/// Evaluates one operation (schema-checked). Throws UsageError on schema errors.
ResultRecord cmd_eval(const std::string& op, const Json& params, const EvalContext& ctx = {});

struct ScanRow {
  double param = 0.0;
  ResultRecord record;
};

/// Finds the single {"sweep": [...]} entry in params (searching nested
/// objects), evaluates every grid point with up to `jobs` threads and returns
/// rows in grid order. Throws UsageError for zero or several sweep axes or
/// an empty grid.
std::vector<ScanRow> cmd_scan(const std::string& op, const Json& params, int jobs,
                              const EvalContext& ctx = {});

/// Serializes with every floating-point number printed as %.17g; non-finite
/// numbers become null.
std::string dump(const Json& j, int indent = 2);

Json to_json(const ResultRecord& r);

/// "param,re,im,abs_err" header plus one row per grid point.
std::string to_csv(const std::vector<ScanRow>& rows);

/// The sl2c command-line tool: subcommands eval, scan, verify.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sl2c::cli
