#include "sl2c/lfactors.hpp"

namespace sl2c::lfactors {

GammaFactorSet GammaFactorSet::at(double r_n_new) const {
  GammaFactorSet out = *this;
  for (std::size_t j = 0; j < shifts.size(); ++j)
    out.shifts[j] += Complex(0.0, r_coeffs[j] * (r_n_new - r_n));
  out.r_n = r_n_new;
  return out;
}

namespace {

void push(GammaFactorSet& g, Complex shift, double r_coeff) {
  g.shifts.push_back(checked(shift, "gamma shift"));
  g.r_coeffs.push_back(r_coeff);
}

}  // namespace

GammaFactorSet triple_gamma_cuspidal(int k, int k_prime, double r_n, double r_prime) {
  GammaFactorSet g;
  g.r_n = r_n;
  const double base = 0.5 * std::abs(k) + 0.25 * std::abs(k_prime);
  for (int a : {1, -1})
    for (int b : {1, -1}) push(g, Complex(base, a * r_n + b * 0.5 * r_prime), a);
  const double base2 = 0.25 * std::abs(k_prime);
  for (int b : {1, -1})
    for (int rep = 0; rep < 2; ++rep) push(g, Complex(base2, b * 0.5 * r_prime), 0.0);
  return g;
}

GammaFactorSet triple_gamma_eisenstein(int k, int k_prime, double r_n, double t) {
  GammaFactorSet g;
  g.r_n = r_n;
  const double base = 0.25 * std::abs(k_prime);
  for (int rep = 0; rep < 2; ++rep) push(g, Complex(base, t), 0.0);
  const double base2 = 0.5 * std::abs(k) + 0.25 * std::abs(k_prime);
  for (int a : {1, -1}) push(g, Complex(base2, a * r_n + t), a);
  return g;
}

namespace {

double log_conductor(const GammaFactorSet& g, Complex s) {
  double acc = 0.0;
  for (const auto& mu : g.shifts) acc += 2.0 * std::log1p(std::abs(s + mu));
  return acc;
}

}  // namespace

ConductorReport analytic_conductor(const GammaFactorSet& g, Complex s, double rel_step) {
  checked(s, "s");
  if (g.shifts.size() != g.r_coeffs.size())
    throw std::invalid_argument("analytic_conductor: shifts and r_coeffs differ in length");
  ConductorReport out;
  out.log_value = log_conductor(g, s);
  out.value = std::exp(out.log_value);
  if (g.r_n != 0.0 && rel_step > 0.0) {
    const double up = g.r_n * (1.0 + rel_step);
    const double down = g.r_n * (1.0 - rel_step);
    out.slope = (log_conductor(g.at(up), s) - log_conductor(g.at(down), s)) /
                (std::log1p(rel_step) - std::log1p(-rel_step));
  }
  return out;
}

}  // namespace sl2c::lfactors
