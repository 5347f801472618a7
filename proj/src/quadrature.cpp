#include "sl2c/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <limits>
#include <sstream>

namespace sl2c {

std::string to_string(ResultFlag flag) {
  switch (flag) {
    case ResultFlag::subnormal: return "subnormal";
    case ResultFlag::precision_limited: return "precision-limited";
    case ResultFlag::coefficients_unpinned: return "coefficients-unpinned";
  }
  return "unknown";
}

namespace quad {
namespace {

// Kronrod 15-point abscissae (positive half) and weights; Gauss 7-point weights
// sit on the odd Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  Complex value;
  double err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

Segment rule15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const Complex fc = f(c);
  Complex k = fc * kWgk[7];
  Complex g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const Complex s = f(c - dx) + f(c + dx);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  k *= h;
  g *= h;
  double err = std::abs(k - g);
  // Floor at roundoff level so flat pieces do not dominate forever.
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(k));
  return {a, b, k, err};
}

double sum_errors(std::priority_queue<Segment> heap) {
  double e = 0.0;
  while (!heap.empty()) {
    e += heap.top().err;
    heap.pop();
  }
  return e;
}

}  // namespace

QuadratureResult gauss_kronrod(const Integrand& f, double a, double b,
                               const AccuracyBudget& budget,
                               bool throw_on_exhaustion) {
  budget.validate();
  QuadratureResult out;
  if (a == b) return out;

  std::priority_queue<Segment> heap;
  Segment first = rule15(f, a, b);
  Complex total = first.value;
  double err = first.err;
  heap.push(first);
  std::size_t evals = 15;
  std::size_t splits = 0;

  auto target = [&] { return std::max(budget.abs_tol, budget.rel_tol * std::abs(total)); };

  for (;;) {
    if (err <= target()) {
      err = sum_errors(heap);
      if (err <= target()) break;
    }
    if (splits >= budget.max_subdivisions) {
      if (throw_on_exhaustion) {
        std::ostringstream msg;
        msg << "gauss_kronrod: budget exhausted after " << splits
            << " subdivisions (error estimate " << err << ", target " << target() << ")";
        throw BudgetExhausted(msg.str());
      }
      break;
    }
    Segment s = heap.top();
    heap.pop();
    const double mid = 0.5 * (s.a + s.b);
    Segment left = rule15(f, s.a, mid);
    Segment right = rule15(f, mid, s.b);
    evals += 30;
    ++splits;
    total += left.value + right.value - s.value;
    heap.push(left);
    heap.push(right);
    err += left.err + right.err - s.err;
    if (splits % 64 == 0) err = sum_errors(heap);
  }
  err = sum_errors(heap);
  out.value = total;
  out.abs_err = err;
  out.evaluations = evals;
  return out;
}

NodesWeights gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  NodesWeights out;
  out.nodes.resize(n);
  out.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    out.nodes[i] = -x;
    out.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out.weights[i] = w;
    out.weights[n - 1 - i] = w;
  }
  return out;
}

QuadratureResult positive_reals(const Integrand& f, const AccuracyBudget& budget,
                                HalfLineWindow window) {
  const double u_max = -std::log(window.y_min);
  const double v_max = std::asinh(window.y_max - 1.0);

  auto lower = [&](double u) -> Complex {
    const double y = std::exp(-u);
    return f(y) * y;
  };
  auto upper = [&](double v) -> Complex {
    return f(1.0 + std::sinh(v)) * std::cosh(v);
  };
  // A coarse pass sizes the total, so that a piece much smaller than the
  // other is not refined to its own relative tolerance.
  AccuracyBudget coarse = budget;
  coarse.rel_tol = std::max(budget.rel_tol, 1e-6);
  coarse.max_subdivisions = std::min<std::size_t>(budget.max_subdivisions, 200);
  const QuadratureResult lo0 = gauss_kronrod(lower, 0.0, u_max, coarse, false);
  const QuadratureResult hi0 = gauss_kronrod(upper, 0.0, v_max, coarse, false);

  AccuracyBudget piece = budget;
  piece.abs_tol = std::max(0.5 * budget.abs_tol, 0.5 * budget.rel_tol * std::abs(lo0.value + hi0.value));
  QuadratureResult lo = gauss_kronrod(lower, 0.0, u_max, piece);
  QuadratureResult hi = gauss_kronrod(upper, 0.0, v_max, piece);

  QuadratureResult out;
  out.value = lo.value + hi.value;
  out.abs_err = lo.abs_err + hi.abs_err;
  out.evaluations = lo0.evaluations + hi0.evaluations + lo.evaluations + hi.evaluations;
  return out;
}

}  // namespace quad
}  // namespace sl2c
