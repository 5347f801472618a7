#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sl2c/cli.hpp"
#include "sl2c/integrals.hpp"

using namespace sl2c;
using namespace sl2c::cli;

namespace {
struct Run {
  int code;
  std::string out, err;
};
Run call(std::vector<std::string> args) {
  args.insert(args.begin(), "sl2c");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}
}  // namespace

TEST_CASE("eval: spec examples") {
  auto r = cmd_eval("bessel_moment", Json::parse(R"({"lambda":1,"mu":0.5,"nu":0.5})"), {});
  CHECK(r.value.real() == doctest::Approx(0.7853982).epsilon(1e-7));
  r = cmd_eval("casimir_eigenvalue", Json::parse(R"({"k":0,"r":1})"), {});
  CHECK(r.value.real() == -2.0);
  r = cmd_eval("bessel_k", Json::parse(R"({"nu":{"re":0,"im":2},"x":1})"), {});
  CHECK(std::abs(r.value.imag()) < 1e-15);
}

TEST_CASE("eval: schema errors name the field") {
  try {
    cmd_eval("bessel_moment", Json::parse(R"({"lambda":1,"mu":"x","nu":0.5})"), {});
    FAIL("expected UsageError");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("'mu'") != std::string::npos);
  }
  CHECK_THROWS_AS(cmd_eval("bessel_moment", Json::parse(R"({"lambda":1,"mu":0.5})"), {}), UsageError);
  CHECK_THROWS_AS(cmd_eval("bessel_moment", Json::parse(R"({"lambda":1,"mu":0.5,"nu":0.5,"zz":1})"), {}), UsageError);
  CHECK_THROWS_AS(cmd_eval("no_such_op", Json::object(), {}), UsageError);
}

TEST_CASE("unknown op exits 2 and writes no output file") {
  const std::string path = "cli_test_unknown_op.json";
  std::remove(path.c_str());
  const auto r = call({"eval", "--op", "no_such_op", "--params", "{}", "--out", path});
  CHECK(r.code == kUsageError);
  CHECK_FALSE(std::ifstream(path).good());
}

TEST_CASE("eval output is deterministic and uses 17 digits") {
  const auto a = call({"eval", "--op", "weight_T1", "--params", R"({"k":2,"r_prime":1.5})"});
  const auto b = call({"eval", "--op", "weight_T1", "--params", R"({"k":2,"r_prime":1.5})"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("wall_time_ms") == std::string::npos);
  const auto j = Json::parse(a.out);
  CHECK(j["value"]["re"].get<double>() == integrals::weight_T1(2, 1.5).real());
}

TEST_CASE("dump: NaN becomes null, -0 prints as 0") {
  Json j = {{"a", std::nan("")}, {"b", -0.0}, {"c", 0.1}};
  CHECK(dump(j, -1) == R"({"a":null,"b":0,"c":0.10000000000000001})");
}

TEST_CASE("scan: rows in grid order, parallel equals serial") {
  const auto params = Json::parse(R"({"k":2,"r_prime":{"sweep":[0.5,1,2,3.7,5,7,10]}})");
  const auto serial = cmd_scan("weight_T1", params, 1, {});
  const auto parallel = cmd_scan("weight_T1", params, 4, {});
  REQUIRE(serial.size() == 7);
  CHECK(to_csv(serial) == to_csv(parallel));
  CHECK(to_csv(serial).rfind("param,re,im,abs_err\n", 0) == 0);
  for (std::size_t i = 0; i < serial.size(); ++i)
    CHECK(serial[i].param == params["r_prime"]["sweep"][i].get<double>());
}

TEST_CASE("scan: sweep errors") {
  CHECK_THROWS_AS(cmd_scan("weight_T1", Json::parse(R"({"k":2,"r_prime":1})"), 1, {}), UsageError);
  CHECK_THROWS_AS(cmd_scan("weight_T1", Json::parse(R"({"k":{"sweep":[0,2]},"r_prime":{"sweep":[1]}})"), 1, {}),
                  UsageError);
  CHECK_THROWS_AS(cmd_scan("weight_T1", Json::parse(R"({"k":2,"r_prime":{"sweep":[]}})"), 1, {}), UsageError);
}

TEST_CASE("scan: nested sweep inside a Whittaker spec") {
  const auto params = Json::parse(
      R"({"spec1":{"k":2,"m":2,"r":{"sweep":[32,64,128]}},"w1":-2,"spec2":{"k":0,"m":0,"r":0.5},"w2":0,"k":2})");
  const auto rows = cmd_scan("local_integral_T", params, 2, {});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].param == 32.0);
  CHECK(std::abs(rows[1].record.value) < std::abs(rows[0].record.value));
}

TEST_CASE("verify exit codes") {
  CHECK(call({"verify", "--suite", "lfactors"}).code == kSuccess);
  CHECK(call({"verify", "--suite", "nonsense"}).code == kUsageError);
  CHECK(call({"eval"}).code == kUsageError);
}
