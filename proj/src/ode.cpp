#include "urnlab/ode.hpp"

#include <algorithm>
#include <cmath>

#include "urnlab/drift.hpp"
#include "urnlab/errors.hpp"

namespace urnlab {

namespace {

double horner(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// The root the solution of x' = b(x) converges to, decided exactly: the sign
// of b at x0 picks the side, the adjacent root is the limit. x0 exactly on a
// root (or b identically zero) is an equilibrium.
AlgebraicNumber ode_limit(const RationalPolynomial& b, double x0) {
  const Rational x0_exact = rational_from_double(x0);
  if (b.is_zero()) return AlgebraicNumber::from_rational(x0_exact);
  const int side = sgn(b.eval(x0_exact));
  if (side == 0) return AlgebraicNumber::from_rational(x0_exact);
  const auto roots = roots_in_unit_interval(b);
  if (side > 0) {
    for (const auto& root : roots)
      if (root.compare(x0_exact) > 0) return root;
  } else {
    for (auto it = roots.rbegin(); it != roots.rend(); ++it)
      if (it->compare(x0_exact) < 0) return *it;
  }
  throw Error("ode_limit: no adjacent root found");  // impossible for drift polynomials
}

}  // namespace

OdeTrajectory integrate(const Rule& r, double x0, double t_end, double tol) {
  if (!(x0 >= 0.0 && x0 <= 1.0)) throw ValidationError("integrate: x0 must lie in [0, 1]");
  if (!(t_end > 0.0)) throw ValidationError("integrate: t_end must be positive");
  if (!(tol > 0.0)) throw ValidationError("integrate: tol must be positive");

  const RationalPolynomial b = drift_polynomial(r);
  const std::vector<double> coeffs = b.double_coefficients();
  const auto f = [&](double x) { return horner(coeffs, x); };

  // Dormand-Prince 5(4).
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                   e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                   e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  const double h_max = t_end / 512.0;
  double t = 0.0;
  double x = x0;
  double h = h_max;

  OdeTrajectory out{{{0.0, x0}}, ode_limit(b, x0)};
  while (t < t_end) {
    h = std::min(h, t_end - t);
    if (t + h == t) {
      // Step underflow at the horizon; snap to the end.
      out.samples.emplace_back(t_end, x);
      break;
    }
    const double k1 = f(x);
    const double k2 = f(x + h * a21 * k1);
    const double k3 = f(x + h * (a31 * k1 + a32 * k2));
    const double k4 = f(x + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 = f(x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 = f(x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double x_next = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double k7 = f(x_next);
    const double err =
        std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
    const double scale = tol * (1.0 + std::abs(x));
    if (err <= scale) {  // a NaN error estimate fails this and rejects the step
      t += h;
      x = std::clamp(x_next, 0.0, 1.0);
      out.samples.emplace_back(t, x);
    }
    double factor = 0.2;  // overflowed stages: shrink hard
    if (std::isfinite(err))
      factor = err > 0.0 ? std::clamp(0.9 * std::pow(scale / err, 0.2), 0.2, 5.0) : 5.0;
    h = std::min(h * factor, h_max);
  }
  return out;
}

std::optional<Rational> time_to_reach(const Rule& r, double epsilon, double t_max, double tol) {
  if (!(epsilon > 0.0)) throw ValidationError("time_to_reach: epsilon must be positive");
  const double alpha = computed_number(r).to_double();
  const double half_eps = epsilon / 2.0;
  if (std::abs(0.5 - alpha) <= half_eps) return Rational(0);
  for (double window = 1.0;; window *= 2.0) {
    window = std::min(window, t_max);
    const OdeTrajectory traj = integrate(r, 0.5, window, tol);
    for (const auto& [t, x] : traj.samples)
      if (std::abs(x - alpha) <= half_eps) return rational_from_double(t);
    if (window >= t_max) return std::nullopt;
  }
}

}  // namespace urnlab
