#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "ctl/errors.hpp"

namespace ctl::detail {

// Adaptive Dormand-Prince 5(4) with FSAL. State needs +, scalar *, and
// copy; rhs(t, y) returns dy/dt, norm(y) a nonnegative magnitude. The
// per-step budget tol*|h|/|span| * max(1, |y|) (with a 0.25 safety margin)
// keeps the accumulated error near tol relative to the state size.
// Integrates backward when t1 < t0. Throws StiffnessError once the step
// underflows.
template <class State, class Rhs, class Norm>
State rk45(State y, double t0, double t1, double tol, Rhs&& rhs, Norm&& norm) {
  if (t0 == t1) return y;
  const double span = t1 - t0;
  const double dir = span > 0.0 ? 1.0 : -1.0;
  double t = t0;
  double h = span / 64.0;
  State k1 = rhs(t, y);

  while (dir * (t1 - t) > 0.0) {
    if (std::abs(h) < 1e-15 * std::abs(span)) {
      throw StiffnessError("step size underflow in adaptive integrator");
    }
    if (dir * (t + h - t1) > 0.0) h = t1 - t;

    State k2 = rhs(t + h / 5.0, State(y + (h / 5.0) * k1));
    State k3 = rhs(t + 3.0 * h / 10.0,
                   State(y + (3.0 * h / 40.0) * k1 + (9.0 * h / 40.0) * k2));
    State k4 = rhs(t + 4.0 * h / 5.0,
                   State(y + (44.0 * h / 45.0) * k1 - (56.0 * h / 15.0) * k2 +
                         (32.0 * h / 9.0) * k3));
    State k5 = rhs(t + 8.0 * h / 9.0,
                   State(y + (19372.0 * h / 6561.0) * k1 -
                         (25360.0 * h / 2187.0) * k2 +
                         (64448.0 * h / 6561.0) * k3 -
                         (212.0 * h / 729.0) * k4));
    State k6 = rhs(t + h, State(y + (9017.0 * h / 3168.0) * k1 -
                                (355.0 * h / 33.0) * k2 +
                                (46732.0 * h / 5247.0) * k3 +
                                (49.0 * h / 176.0) * k4 -
                                (5103.0 * h / 18656.0) * k5));
    State y5 = y + (35.0 * h / 384.0) * k1 + (500.0 * h / 1113.0) * k3 +
               (125.0 * h / 192.0) * k4 - (2187.0 * h / 6784.0) * k5 +
               (11.0 * h / 84.0) * k6;
    State k7 = rhs(t + h, y5);

    State err = (71.0 * h / 57600.0) * k1 - (71.0 * h / 16695.0) * k3 +
                (71.0 * h / 1920.0) * k4 - (17253.0 * h / 339200.0) * k5 +
                (22.0 * h / 525.0) * k6 - (h / 40.0) * k7;
    const double budget =
        0.25 * tol * std::abs(h) / std::abs(span) * std::max(1.0, norm(y));
    const double e = norm(err);

    if (e <= budget) {
      t += h;
      y = std::move(y5);
      k1 = std::move(k7);
    }
    const double grow =
        e > 0.0 ? 0.9 * std::pow(budget / e, 0.2) : 5.0;
    h *= std::clamp(grow, 0.2, 5.0);
  }
  return y;
}

}  // namespace ctl::detail
