#include "sl2c/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "sl2c/integrals.hpp"
#include "sl2c/lfactors.hpp"
#include "sl2c/principal_series.hpp"
#include "sl2c/special_functions.hpp"
#include "sl2c/su2.hpp"
#include "sl2c/verify.hpp"
#include "sl2c/whittaker.hpp"

namespace sl2c::cli {

namespace {

// ---------------------------------------------------------------- parameters

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
  throw UsageError("params: field '" + field + "' " + what);
}

double get_real(const Json& p, const std::string& name) {
  const auto& v = p.at(name);
  if (!v.is_number()) schema_error(name, "must be a number");
  return v.get<double>();
}

double get_real_or(const Json& p, const std::string& name, double fallback) {
  return p.contains(name) ? get_real(p, name) : fallback;
}

int get_int(const Json& p, const std::string& name) {
  const auto& v = p.at(name);
  if (!v.is_number_integer()) schema_error(name, "must be an integer");
  return v.get<int>();
}

Complex parse_complex(const Json& v, const std::string& name) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  if (v.is_object() && v.size() == 2 && v.contains("re") && v.contains("im") && v["re"].is_number() &&
      v["im"].is_number())
    return {v["re"].get<double>(), v["im"].get<double>()};
  schema_error(name, "must be a number, [re, im] or {\"re\": .., \"im\": ..}");
}

Complex get_complex(const Json& p, const std::string& name) { return parse_complex(p.at(name), name); }

whittaker::WhittakerSpec get_whittaker(const Json& p, const std::string& name) {
  const auto& v = p.at(name);
  auto spec = whittaker::WhittakerSpec::make(get_int(v, "k"), get_int(v, "m"), get_real(v, "r"));
  if (v.contains("coeffs")) {
    for (const auto& c : v["coeffs"]) {
      spec.coeffs[{get_int(c, "w"), get_int(c, "p"), get_int(c, "q")}] = get_real(c, "value");
    }
    spec.validate();
  }
  if (v.contains("unpinned") && v["unpinned"] == "error") spec.policy = whittaker::UnpinnedPolicy::error;
  return spec;
}

std::vector<special::GammaArg> get_gamma_args(const Json& p, const std::string& name) {
  std::vector<special::GammaArg> out;
  for (const auto& a : p.at(name)) out.push_back({parse_complex(a.at("shift"), name + ".shift"), get_real(a, "r_coeff")});
  return out;
}

su2::Mat2 get_euler(const Json& p, const std::string& name) {
  const auto& v = p.at(name);
  if (!v.is_array() || v.size() != 3) schema_error(name, "must be [alpha, beta, gamma]");
  for (const auto& x : v)
    if (!x.is_number()) schema_error(name, "must hold three numbers");
  return su2::Su2Element::from_euler(v[0].get<double>(), v[1].get<double>(), v[2].get<double>()).matrix();
}

// A unimodular 2x2 complex matrix as [a, b, c, d] (row-major), entries complex.
su2::Mat2 get_matrix(const Json& p, const std::string& name) {
  const auto& v = p.at(name);
  if (!v.is_array() || v.size() != 4) schema_error(name, "must be [a, b, c, d] (row-major)");
  su2::Mat2 g;
  g << parse_complex(v[0], name), parse_complex(v[1], name), parse_complex(v[2], name), parse_complex(v[3], name);
  return principal::GroupElement::from_matrix(g, 1e-10).matrix();
}

void check_field(const Json& v, const Field& f, const std::string& path) {
  switch (f.kind) {
    case FieldKind::integer:
      if (!v.is_number_integer()) schema_error(path, "must be an integer");
      break;
    case FieldKind::real:
      if (!v.is_number()) schema_error(path, "must be a number");
      break;
    case FieldKind::complex:
      parse_complex(v, path);
      break;
    case FieldKind::whittaker_spec: {
      if (!v.is_object()) schema_error(path, "must be an object {k, m, r[, coeffs, unpinned]}");
      for (const char* key : {"k", "m"})
        if (!v.contains(key) || !v[key].is_number_integer()) schema_error(path + "." + key, "must be an integer");
      if (!v.contains("r") || !v["r"].is_number()) schema_error(path + ".r", "must be a number");
      for (const auto& [key, _] : v.items())
        if (key != "k" && key != "m" && key != "r" && key != "coeffs" && key != "unpinned")
          schema_error(path + "." + key, "is not a known field");
      break;
    }
    case FieldKind::gamma_args:
      if (!v.is_array()) schema_error(path, "must be an array of {shift, r_coeff}");
      for (const auto& a : v) {
        if (!a.is_object() || !a.contains("shift") || !a.contains("r_coeff") || !a["r_coeff"].is_number())
          schema_error(path, "entries must be {shift, r_coeff}");
        parse_complex(a["shift"], path + ".shift");
      }
      break;
    case FieldKind::matrix:
      if (!v.is_array() || v.size() != 4) schema_error(path, "must be [a, b, c, d] (row-major)");
      for (const auto& x : v) parse_complex(x, path);
      break;
    case FieldKind::euler_angles:
      if (!v.is_array() || v.size() != 3) schema_error(path, "must be [alpha, beta, gamma]");
      for (const auto& x : v)
        if (!x.is_number()) schema_error(path, "must hold three numbers");
      break;
  }
}

AccuracyBudget quad_budget(const Json& p, const EvalContext& ctx, double default_rel) {
  AccuracyBudget b{default_rel, 1e-300, 2000};
  b.rel_tol = std::max(1e-14, get_real_or(p, "rel_tol", default_rel * ctx.tolerance_scale));
  return b;
}

// ---------------------------------------------------------------- records

void add_flags(ResultRecord& r, const std::vector<ResultFlag>& flags) {
  for (auto f : flags) {
    const auto s = to_string(f);
    if (std::find(r.flags.begin(), r.flags.end(), s) == r.flags.end()) r.flags.push_back(s);
  }
}

ResultRecord value_record(Complex v) {
  ResultRecord r;
  r.value = v;
  return r;
}

ResultRecord quad_record(const QuadratureResult& q) {
  ResultRecord r;
  r.value = q.value;
  r.abs_err = q.abs_err;
  add_flags(r, q.flags);
  return r;
}


Field I(const char* n, bool req = true) { return {n, FieldKind::integer, req}; }
Field R(const char* n, bool req = true) { return {n, FieldKind::real, req}; }
Field C(const char* n, bool req = true) { return {n, FieldKind::complex, req}; }
Field W(const char* n) { return {n, FieldKind::whittaker_spec, true}; }
Field E(const char* n) { return {n, FieldKind::euler_angles, true}; }
Field G(const char* n) { return {n, FieldKind::gamma_args, true}; }
Field M(const char* n) { return {n, FieldKind::matrix, true}; }

integrals::LocalIntegralSpec get_local_spec(const Json& p) {
  auto s = integrals::LocalIntegralSpec::make(get_whittaker(p, "spec1"), get_int(p, "w1"), get_whittaker(p, "spec2"),
                                              get_int(p, "w2"), get_int(p, "k"));
  if (p.contains("r3")) s.r3 = get_real(p, "r3");
  return s;
}

integrals::BesselOrderConvention get_convention(const Json& p) {
  if (!p.contains("convention")) return integrals::BesselOrderConvention::half_weight;
  const auto& v = p["convention"];
  if (v == "half_weight") return integrals::BesselOrderConvention::half_weight;
  if (v == "literal") return integrals::BesselOrderConvention::literal;
  schema_error("convention", "must be \"half_weight\" or \"literal\"");
}

std::map<std::string, Operation> build_registry() {
  using namespace special;
  std::map<std::string, Operation> ops;
  const Field rel_tol = R("rel_tol", false);

  // special_functions
  ops["log_gamma"] = {"complex log Gamma(z)", {C("z")},
                      [](const Json& p, const EvalContext&) { return value_record(log_gamma(get_complex(p, "z"))); }};
  ops["bessel_k"] = {"K_nu(x) for complex order", {C("nu"), R("x")}, [](const Json& p, const EvalContext&) {
                       const auto k = bessel_k_scaled(get_complex(p, "nu"), get_real(p, "x"));
                       ResultRecord r = value_record(k.value());
                       r.abs_err = k.rel_err * std::abs(r.value);
                       add_flags(r, k.flags);
                       return r;
                     }};
  ops["gamma_product_pm"] = {"prod Gamma((1 + lambda +- mu +- nu)/2)", {C("lambda"), C("mu"), C("nu")},
                             [](const Json& p, const EvalContext&) {
                               return value_record(gamma_product_pm(get_complex(p, "lambda"), get_complex(p, "mu"),
                                                                    get_complex(p, "nu")));
                             }};
  ops["stirling_mod_exponent"] = {"power sigma of a balanced Gamma ratio", {G("numerator"), G("denominator")},
                                  [](const Json& p, const EvalContext&) {
                                    const auto num = get_gamma_args(p, "numerator");
                                    const auto den = get_gamma_args(p, "denominator");
                                    return value_record(stirling_mod_exponent(num, den));
                                  }};

  // su2
  ops["rep_matrix_entry"] = {"[rho_m(g)]_{row,col} for g from Euler angles", {I("m"), E("euler"), I("row"), I("col")},
                             [](const Json& p, const EvalContext&) {
                               const int m = get_int(p, "m");
                               const auto R = su2::rep_matrix(m, get_euler(p, "euler"));
                               const int row = get_int(p, "row"), col = get_int(p, "col");
                               if (row < 0 || row > m) schema_error("row", "out of range");
                               if (col < 0 || col > m) schema_error("col", "out of range");
                               return value_record(R(row, col));
                             }};
  ops["psi_star"] = {"dual matrix coefficient psi*_j", {I("m"), I("j"), E("euler")},
                     [](const Json& p, const EvalContext&) {
                       return value_record(su2::psi_star(get_int(p, "m"), get_int(p, "j"), get_euler(p, "euler")));
                     }};
  ops["truncated_delta"] = {"delta_N(g)", {I("weight"), I("order"), E("euler")}, [](const Json& p, const EvalContext&) {
                              return value_record(su2::truncated_delta_value({get_int(p, "weight"), get_int(p, "order")},
                                                                             get_euler(p, "euler")));
                            }};

  // principal_series
  ops["casimir_eigenvalue"] = {"-r^2 - 1 + k^2/4", {I("k"), R("r")}, [](const Json& p, const EvalContext&) {
                                 return value_record(principal::casimir_eigenvalue(
                                     principal::UnitaryParam::make(get_int(p, "k"), get_real(p, "r"))));
                               }};
  ops["iwasawa"] = {"g = n(x) a(y) kappa (value = x; y and kappa in extra)", {M("g")},
                    [](const Json& p, const EvalContext&) {
                      const auto f = principal::iwasawa(get_matrix(p, "g"));
                      ResultRecord r = value_record(f.x);
                      r.extra["a"] = f.a;
                      r.extra["kappa"] = Json::array();
                      const su2::Mat2& k = f.kappa.matrix();
                      for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) r.extra["kappa"].push_back({{"re", k(i, j).real()}, {"im", k(i, j).imag()}});
                      return r;
                    }};
  ops["spherical_coefficient"] = {"<I(diag(e^t, e^-t)) 1, 1> for weight 0", {R("r"), R("t"), rel_tol},
                                  [](const Json& p, const EvalContext& ctx) {
                                    return quad_record(principal::spherical_coefficient(
                                        get_real(p, "r"), get_real(p, "t"), quad_budget(p, ctx, 1e-12)));
                                  }};

  // whittaker
  ops["whittaker_V"] = {"V_w(y)", {W("spec"), I("w"), R("y")}, [](const Json& p, const EvalContext&) {
                          const auto v = whittaker::whittaker_V_scaled(get_whittaker(p, "spec"), get_int(p, "w"),
                                                                      get_real(p, "y"));
                          ResultRecord r = value_record(v.value());
                          add_flags(r, v.flags);
                          return r;
                        }};
  ops["index_set"] = {"(p, q) pairs of a column (value = count)", {I("k"), I("m"), I("w")},
                      [](const Json& p, const EvalContext&) {
                        const auto idx = whittaker::index_set(get_int(p, "k"), get_int(p, "m"), get_int(p, "w"));
                        ResultRecord r = value_record(static_cast<double>(idx.size()));
                        r.extra["pairs"] = Json::array();
                        for (const auto& [a, b] : idx) r.extra["pairs"].push_back({a, b});
                        return r;
                      }};
  ops["unitary_constant"] = {"Whittaker unitary normalization C", {I("k"), I("m"), R("r")},
                             [](const Json& p, const EvalContext&) {
                               return value_record(
                                   whittaker::unitary_constant(get_int(p, "k"), get_int(p, "m"), get_real(p, "r")));
                             }};
  ops["whittaker_norm_sq"] = {"closed-form norm of V_m", {I("k"), I("m"), R("r")},
                              [](const Json& p, const EvalContext&) {
                                return value_record(
                                    whittaker::whittaker_norm_sq(get_int(p, "k"), get_int(p, "m"), get_real(p, "r")));
                              }};
  ops["whittaker_norm_sq_quad"] = {"norm of V_m by quadrature", {I("k"), I("m"), R("r"), rel_tol},
                                   [](const Json& p, const EvalContext& ctx) {
                                     return quad_record(whittaker::whittaker_norm_sq_quad(
                                         get_int(p, "k"), get_int(p, "m"), get_real(p, "r"), quad_budget(p, ctx, 1e-10)));
                                   }};

  // integrals
  ops["bessel_moment"] = {"int y^lambda K_mu K_nu dy, closed form", {C("lambda"), C("mu"), C("nu")},
                          [](const Json& p, const EvalContext&) {
                            return value_record(integrals::bessel_moment(
                                {get_complex(p, "lambda"), get_complex(p, "mu"), get_complex(p, "nu")}));
                          }};
  ops["bessel_moment_quad"] = {"int y^lambda K_mu K_nu dy, quadrature", {C("lambda"), C("mu"), C("nu"), rel_tol},
                               [](const Json& p, const EvalContext& ctx) {
                                 return quad_record(integrals::bessel_moment_quad(
                                     {get_complex(p, "lambda"), get_complex(p, "mu"), get_complex(p, "nu")},
                                     quad_budget(p, ctx, 1e-11)));
                               }};
  ops["triple_term"] = {"Gamma-quotient term of the local integral", {C("a"), C("b"), C("c"), R("r")},
                        [](const Json& p, const EvalContext&) {
                          return value_record(integrals::triple_term(
                              {get_complex(p, "a"), get_complex(p, "b"), get_complex(p, "c"), get_real(p, "r")}));
                        }};
  const std::vector<Field> local_fields = {W("spec1"), I("w1"), W("spec2"), I("w2"), I("k"), R("r3", false),
                                           {"convention", FieldKind::integer, false}};
  ops["local_integral_T"] = {"closed-form local integral T", local_fields, [](const Json& p, const EvalContext&) {
                               return value_record(integrals::local_integral_T(get_local_spec(p), get_convention(p)));
                             }};
  auto quad_fields = local_fields;
  quad_fields.back() = rel_tol;
  ops["local_integral_T_quad"] = {"local integral T by quadrature", quad_fields,
                                  [](const Json& p, const EvalContext& ctx) {
                                    return quad_record(
                                        integrals::local_integral_T_quad(get_local_spec(p), quad_budget(p, ctx, 1e-9)));
                                  }};
  ops["exponent_report"] = {"sigma exponents (value = max sigma)", {I("k"), I("m"), I("w1")},
                            [](const Json& p, const EvalContext&) {
                              const auto rep = integrals::exponent_report(get_int(p, "k"), get_int(p, "m"), get_int(p, "w1"));
                              ResultRecord r = value_record(rep.max_sigma);
                              r.extra["extremal"] = rep.extremal;
                              r.extra["terms"] = Json::array();
                              for (const auto& t : rep.terms) r.extra["terms"].push_back({{"p", t.p}, {"q", t.q}, {"sigma", t.sigma}});
                              r.extra["argmax"] = Json::array();
                              for (const auto& [a, b] : rep.argmax) r.extra["argmax"].push_back({a, b});
                              return r;
                            }};
  ops["weight_T1"] = {"weight-aspect T1, closed form", {I("k"), R("r_prime")}, [](const Json& p, const EvalContext&) {
                        return value_record(integrals::weight_T1(get_int(p, "k"), get_real(p, "r_prime")));
                      }};
  ops["weight_T1_quad"] = {"weight-aspect T1, quadrature", {I("k"), R("r_prime"), rel_tol},
                           [](const Json& p, const EvalContext& ctx) {
                             return quad_record(integrals::weight_T1_quad(get_int(p, "k"), get_real(p, "r_prime"),
                                                                          quad_budget(p, ctx, 1e-8)));
                           }};
  ops["weight_T2"] = {"weight-aspect T2, closed form", {I("k"), R("r_prime")}, [](const Json& p, const EvalContext&) {
                        return value_record(integrals::weight_T2(get_int(p, "k"), get_real(p, "r_prime")));
                      }};
  ops["weight_T2_quad"] = {"weight-aspect T2, quadrature", {I("k"), R("r_prime"), rel_tol},
                           [](const Json& p, const EvalContext& ctx) {
                             return quad_record(integrals::weight_T2_quad(get_int(p, "k"), get_real(p, "r_prime"),
                                                                          quad_budget(p, ctx, 1e-6)));
                           }};
  ops["mv_check"] = {"S / (|T|^2 / 4 pi) for three spherical representations (value = ratio)",
                     {R("r1"), R("r2"), R("r3"), I("k", false)}, [](const Json& p, const EvalContext&) {
                       const auto mv = integrals::mv_check(get_real(p, "r1"), get_real(p, "r2"), get_real(p, "r3"), {},
                                                           p.contains("k") ? get_int(p, "k") : 0);
                       ResultRecord r = value_record(mv.ratio);
                       r.abs_err = mv.asserted ? mv.S_abs_err / (std::norm(mv.T_unit) / (4 * kPi)) : 0.0;
                       r.extra["S_direct"] = mv.S_direct;
                       r.extra["S_abs_err"] = mv.S_abs_err;
                       r.extra["T"] = {{"re", mv.T.real()}, {"im", mv.T.imag()}};
                       r.extra["T_unit"] = {{"re", mv.T_unit.real()}, {"im", mv.T_unit.imag()}};
                       r.extra["asserted"] = mv.asserted;
                       return r;
                     }};

  // lfactors
  auto conductor_record = [](const lfactors::GammaFactorSet& g, Complex s) {
    const auto c = lfactors::analytic_conductor(g, s);
    ResultRecord r = value_record(c.value);
    r.extra["log_value"] = c.log_value;
    r.extra["slope"] = c.slope;
    r.extra["shifts"] = Json::array();
    for (const auto& mu : g.shifts) r.extra["shifts"].push_back({{"re", mu.real()}, {"im", mu.imag()}});
    return r;
  };
  ops["analytic_conductor_cuspidal"] = {"analytic conductor of the cuspidal triple-product Gamma factors",
                               {I("k"), I("k_prime"), R("r_n"), R("r_prime"), C("s")},
                               [conductor_record](const Json& p, const EvalContext&) {
                                 return conductor_record(lfactors::triple_gamma_cuspidal(get_int(p, "k"), get_int(p, "k_prime"),
                                                                                         get_real(p, "r_n"),
                                                                                         get_real(p, "r_prime")),
                                                         get_complex(p, "s"));
                               }};
  ops["analytic_conductor_eisenstein"] = {"analytic conductor of the Eisenstein triple-product Gamma factors",
                                 {I("k"), I("k_prime"), R("r_n"), R("t"), C("s")},
                                 [conductor_record](const Json& p, const EvalContext&) {
                                   return conductor_record(lfactors::triple_gamma_eisenstein(
                                                               get_int(p, "k"), get_int(p, "k_prime"), get_real(p, "r_n"),
                                                               get_real(p, "t")),
                                                           get_complex(p, "s"));
                                 }};
  return ops;
}

}  // namespace

const std::map<std::string, Operation>& registry() {
  static const std::map<std::string, Operation> ops = build_registry();
  return ops;
}

void validate_params(const std::string& op, const Json& params) {
  const auto it = registry().find(op);
  if (it == registry().end()) throw UsageError("unknown operation '" + op + "'");
  if (!params.is_object()) throw UsageError("params: document must be a JSON object");
  for (const auto& f : it->second.fields) {
    if (!params.contains(f.name)) {
      if (f.required) schema_error(f.name, "is required by '" + op + "'");
      continue;
    }
    if (f.name == "convention") {
      get_convention(params);
      continue;
    }
    check_field(params[f.name], f, f.name);
  }
  for (const auto& [key, _] : params.items()) {
    const auto& fields = it->second.fields;
    if (std::none_of(fields.begin(), fields.end(), [&](const Field& f) { return f.name == key; }))
      schema_error(key, "is not a parameter of '" + op + "'");
  }
}

ResultRecord cmd_eval(const std::string& op, const Json& params, const EvalContext& ctx) {
  validate_params(op, params);
  ResultRecord r;
  try {
    r = registry().at(op).run(params, ctx);
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("params: ") + e.what());
  }
  r.op = op;
  r.params = params;
  return r;
}

namespace {

// Locates {"sweep": [...]} objects; returns JSON pointers to them.
void find_sweeps(const Json& j, const Json::json_pointer& at, std::vector<Json::json_pointer>& out) {
  if (!j.is_object()) return;
  if (j.size() == 1 && j.contains("sweep")) {
    out.push_back(at);
    return;
  }
  for (const auto& [key, v] : j.items()) find_sweeps(v, at / key, out);
}

}  // namespace

std::vector<ScanRow> cmd_scan(const std::string& op, const Json& params, int jobs, const EvalContext& ctx) {
  if (registry().find(op) == registry().end()) throw UsageError("unknown operation '" + op + "'");
  if (!params.is_object()) throw UsageError("params: document must be a JSON object");
  std::vector<Json::json_pointer> sweeps;
  find_sweeps(params, Json::json_pointer(), sweeps);
  if (sweeps.empty()) throw UsageError("scan: params must contain exactly one {\"sweep\": [...]} axis, found none");
  if (sweeps.size() > 1) {
    std::string names;
    for (const auto& s : sweeps) names += (names.empty() ? "" : ", ") + s.to_string();
    throw UsageError("scan: conflicting sweep axes " + names);
  }
  const auto axis = sweeps.front();
  const Json& grid = params.at(axis).at("sweep");
  if (!grid.is_array() || grid.empty()) throw UsageError("scan: sweep grid for " + axis.to_string() + " is empty");
  for (const auto& v : grid)
    if (!v.is_number()) throw UsageError("scan: sweep grid for " + axis.to_string() + " must hold numbers");

  std::vector<Json> docs;
  for (const auto& v : grid) {
    Json d = params;
    d[axis] = v;
    validate_params(op, d);
    docs.push_back(std::move(d));
  }

  std::vector<ScanRow> rows(docs.size());
  std::vector<std::string> errors(docs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < docs.size(); i = next++) {
      try {
        rows[i].param = grid[i].get<double>();
        rows[i].record = cmd_eval(op, docs[i], ctx);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(docs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty()) throw std::runtime_error("scan: grid point " + std::to_string(i) + ": " + errors[i]);
  return rows;
}

// ---------------------------------------------------------------- output

namespace {

std::string number(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) x = 0.0;  // print -0 as 0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += std::string(",") + nl;
        first = false;
        out += pad + Json(k).dump() + (indent > 0 ? ": " : ":");
        write(v, out, indent, depth + 1);
      }
      out += nl + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += std::string(",") + nl;
        first = false;
        out += pad;
        write(v, out, indent, depth + 1);
      }
      out += nl + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::string out;
  write(j, out, indent, 0);
  return out;
}

Json to_json(const ResultRecord& r) {
  Json j;
  j["op"] = r.op;
  j["params"] = r.params;
  j["value"] = {{"re", r.value.real()}, {"im", r.value.imag()}};
  j["abs_err"] = r.abs_err ? Json(*r.abs_err) : Json(nullptr);
  j["flags"] = r.flags;
  if (!r.extra.empty()) j["extra"] = r.extra;
  if (r.wall_time_ms) j["wall_time_ms"] = *r.wall_time_ms;
  return j;
}

std::string to_csv(const std::vector<ScanRow>& rows) {
  std::string out = "param,re,im,abs_err\n";
  for (const auto& row : rows) {
    out += number(row.param) + "," + number(row.record.value.real()) + "," + number(row.record.value.imag()) + "," +
           (row.record.abs_err ? number(*row.record.abs_err) : std::string()) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------- command line

namespace {

Json load_params(const std::string& arg) {
  if (arg.empty()) return Json::object();
  try {
    if (arg.front() == '{') return Json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw UsageError("cannot read params file '" + arg + "'");
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("params: invalid JSON: ") + e.what());
  }
}

double tolerance_profile(const std::string& name) {
  if (name == "default") return 1.0;
  if (name == "strict") return 0.1;
  if (name == "loose") return 10.0;
  throw UsageError("unknown tolerance profile '" + name + "' (expected default, strict, loose)");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write output file '" + path + "'");
  f << text;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"sl2c: SL(2,C) local integrals, Whittaker functions and their numerical checks"};
  app.require_subcommand(1);

  std::string op, params_arg, out_path, format = "json", tol = "default", suite, convention = "half_weight";
  int jobs = 1;
  std::uint64_t seed = verify::VerifyOptions{}.seed;
  bool timing = false;

  auto* eval = app.add_subcommand("eval", "evaluate one operation");
  auto* scan = app.add_subcommand("scan", "sweep one parameter over an explicit grid");
  auto* ver = app.add_subcommand("verify", "run the property suites");
  auto* list = app.add_subcommand("list", "list the operations");
  for (auto* sc : {eval, scan}) {
    sc->add_option("--op", op, "operation name")->required();
    sc->add_option("--params", params_arg, "params JSON file (or an inline JSON object)");
    sc->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sc->add_flag("--timing", timing, "include wall_time_ms (output is then not byte-reproducible)");
  }
  scan->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  for (auto* sc : {eval, scan, ver}) {
    sc->add_option("--out", out_path, "output path (default stdout)");
    sc->add_option("--tol", tol, "tolerance profile: default, strict, loose");
    sc->add_option("--seed", seed, "random seed");
  }
  ver->add_option("--suite", suite, "special, su2, principal, whittaker, integrals, lfactors or all")->required();
  ver->add_option("--bessel-order", convention, "half_weight (default) or literal (the paper's b = p - q - w1)")
      ->check(CLI::IsMember({"half_weight", "literal"}));
  ver->add_option("--jobs", jobs, "accepted for symmetry; suites run serially")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    EvalContext ctx{tolerance_profile(tol)};
    if (*list) {
      for (const auto& [name, o] : registry()) out << name << "  " << o.summary << "\n";
      return kSuccess;
    }
    if (*eval) {
      const Json params = load_params(params_arg);
      const auto t0 = std::chrono::steady_clock::now();
      ResultRecord r = cmd_eval(op, params, ctx);
      if (timing)
        r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      if (format == "csv")
        emit(to_csv({{0.0, r}}), out_path, out);
      else
        emit(dump(to_json(r)) + "\n", out_path, out);
      return kSuccess;
    }
    if (*scan) {
      const Json params = load_params(params_arg);
      const auto t0 = std::chrono::steady_clock::now();
      const auto rows = cmd_scan(op, params, jobs, ctx);
      if (format == "csv") {
        emit(to_csv(rows), out_path, out);
      } else {
        Json j;
        j["op"] = op;
        j["rows"] = Json::array();
        for (const auto& row : rows) j["rows"].push_back(to_json(row.record));
        if (timing) j["wall_time_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        emit(dump(j) + "\n", out_path, out);
      }
      return kSuccess;
    }
    // verify
    if (!verify::is_suite(suite)) {
      err << "error: unknown suite '" << suite << "' (expected one of special, su2, principal, whittaker, "
          << "integrals, lfactors, all)\n";
      return kUsageError;
    }
    verify::VerifyOptions vo;
    vo.seed = seed;
    vo.tolerance_scale = ctx.tolerance_scale;
    vo.convention = convention == "literal" ? integrals::BesselOrderConvention::literal
                                            : integrals::BesselOrderConvention::half_weight;
    const auto reports = verify::run(suite, vo);
    Json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["bessel_order"] = convention;
    bool all_ok = true;
    j["suites"] = Json::array();
    for (const auto& rep : reports) {
      Json s;
      s["suite"] = rep.suite;
      s["passed"] = rep.passed();
      s["checks"] = Json::array();
      for (const auto& c : rep.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["measured"] = c.measured;
        cj["tolerance"] = c.tolerance;
        cj["passed"] = c.passed;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        s["checks"].push_back(cj);
        if (!c.passed) err << "FAILED " << rep.suite << "/" << c.name << ": " << c.detail << "\n";
      }
      all_ok = all_ok && rep.passed();
      j["suites"].push_back(s);
    }
    j["passed"] = all_ok;
    emit(dump(j) + "\n", out_path, out);
    return all_ok ? kSuccess : kVerificationFailure;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace sl2c::cli
