#include "mvjump/ode.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mvjump/errors.hpp"

namespace mvjump {

namespace {

double rk4_step(const std::function<double(double, double)>& f, double t, double x, double h) {
    const double k1 = f(t, x);
    const double k2 = f(t + 0.5 * h, x + 0.5 * h * k1);
    const double k3 = f(t + 0.5 * h, x + 0.5 * h * k2);
    const double k4 = f(t + h, x + h * k3);
    return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Curve ode_numeric_oracle(const LinearOde& ode, double terminal_value, double horizon, int steps) {
    if (steps < 2) throw Error(Errc::BadConfig, "ode_numeric_oracle needs steps >= 2");
    auto f = [&ode](double t, double x) {
        double dx = ode.a(t) * x;
        if (ode.b) dx += ode.b(t);
        return dx;
    };
    std::vector<double> out(static_cast<std::size_t>(steps) + 1);
    const double h = horizon / steps;
    double x = terminal_value;
    out[static_cast<std::size_t>(steps)] = x;
    for (int i = steps; i > 0; --i) {
        const double t = horizon * static_cast<double>(i) / steps;
        x = rk4_step(f, t, x, -h);
        if (!std::isfinite(x))
            throw Error(Errc::NonFinite, "ODE state non-finite near t=" + std::to_string(t - h));
        out[static_cast<std::size_t>(i - 1)] = x;
    }
    return Curve::sampled(std::move(out), horizon);
}

double rk4_endpoint(const std::function<double(double, double)>& f, double t0, double t1,
                    double x0, int steps) {
    if (steps < 1) throw Error(Errc::BadConfig, "rk4_endpoint needs steps >= 1");
    const double h = (t1 - t0) / steps;
    double x = x0;
    for (int i = 0; i < steps; ++i) {
        x = rk4_step(f, t0 + h * static_cast<double>(i), x, h);
        if (!std::isfinite(x))
            throw Error(Errc::NonFinite, "ODE state non-finite during RK4 sweep");
    }
    return x;
}

}  // namespace mvjump
