// Runge-Kutta integration of the scalar linear terminal-value problems used
// as the independent numerical check of every closed-form coefficient.
#pragma once

#include <functional>

#include "mvjump/curve.hpp"

namespace mvjump {

/// Scalar linear ODE x'(t) = a(t) x(t) + b(t).
struct LinearOde {
    std::function<double(double)> a;
    std::function<double(double)> b;  // may be empty, meaning b == 0
};

/// Classic 4th-order Runge-Kutta sweep from t = horizon down to t = 0,
/// starting at x(horizon) = terminal_value. Returns the solution sampled on
/// the integration grid (steps + 1 uniform points). Throws NonFinite if the
/// state explodes.
Curve ode_numeric_oracle(const LinearOde& ode, double terminal_value, double horizon, int steps);

/// General scalar RK4 over [t0, t1] (either direction), x(t0) = x0. Returns
/// the value at t1 only.
double rk4_endpoint(const std::function<double(double, double)>& f, double t0, double t1,
                    double x0, int steps);

}  // namespace mvjump
