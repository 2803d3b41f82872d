#pragma once

#include <optional>
#include <vector>

#include "urnlab/algebraic.hpp"
#include "urnlab/rule.hpp"

namespace urnlab {

struct OdeTrajectory {
  std::vector<std::pair<double, double>> samples;  // (t, x), t ascending
  AlgebraicNumber limit;                           // the adjacent root of b
};

// Integrates x' = b(x) from x0 with an adaptive Dormand-Prince 5(4) scheme.
// Local error kept below tol; the step is capped at t_end/512 so the curve is
// densely sampled. The limit the trajectory converges to is always taken from
// the exact root isolation, never from the numerics.
OdeTrajectory integrate(const Rule& r, double x0, double t_end, double tol = 1e-10);

// Smallest integration-grid time c with |x_c - alpha| <= epsilon/2, starting
// from x0 = 1/2; returns 0 when the start already qualifies and nullopt when
// t_max is exhausted without certifying (near-degenerate roots).
std::optional<Rational> time_to_reach(const Rule& r, double epsilon, double t_max = 1e5,
                                      double tol = 1e-10);

}  // namespace urnlab
