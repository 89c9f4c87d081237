#include "mvjump/analytic.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mvjump/errors.hpp"
#include "mvjump/ode.hpp"

namespace mvjump {

std::pair<Curve, Curve> solve_mp_coefficients(const MarketModel& m, double w, double beta) {
    if (!(w > 0.0)) throw Error(Errc::BadConfig, "risk weight w must be positive");
    const Curve s2 = cumulative_to_horizon(m, [&m](double t) { return 2.0 * m.rho(t) - theta(m, t); });
    const Curve sr = cumulative_to_horizon(m, [&m](double t) { return m.rho(t); });
    const double sw = std::sqrt(w);
    const int n = m.grid_points();
    std::vector<double> phi(static_cast<std::size_t>(n)), psi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = m.grid_time(i);
        const double growth = std::exp(s2(t));
        phi[static_cast<std::size_t>(i)] = -growth;
        psi[static_cast<std::size_t>(i)] = sw * beta * growth * (std::exp(-sr(t)) - 1.0);
    }
    return {Curve::sampled(std::move(phi), m.T), Curve::sampled(std::move(psi), m.T)};
}

DppCoefficients solve_dpp_coefficients(const MarketModel& m, double w, double beta) {
    if (!(w > 0.0)) throw Error(Errc::BadConfig, "risk weight w must be positive");
    const Curve s2 = cumulative_to_horizon(m, [&m](double t) { return theta(m, t) - 2.0 * m.rho(t); });
    const Curve sr = cumulative_to_horizon(m, [&m](double t) { return m.rho(t); });
    const double sw = std::sqrt(w);
    const int n = m.grid_points();
    std::vector<double> P(static_cast<std::size_t>(n)), Q(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = m.grid_time(i);
        P[static_cast<std::size_t>(i)] = std::exp(-s2(t));
        Q[static_cast<std::size_t>(i)] =
            sw * beta * P[static_cast<std::size_t>(i)] * (1.0 - std::exp(-sr(t)));
    }
    // R(t) = int_t^T [sqrt(w) beta rho - theta Q / (2P)] Q ds, backward trapezoid.
    std::vector<double> R(static_cast<std::size_t>(n));
    const double h = m.grid_dt();
    auto rate = [&](int i) {
        const double t = m.grid_time(i);
        const double q = Q[static_cast<std::size_t>(i)];
        return (sw * beta * m.rho(t) - 0.5 * theta(m, t) * q / P[static_cast<std::size_t>(i)]) * q;
    };
    R[static_cast<std::size_t>(m.grid_n)] = 0.0;
    double next = rate(m.grid_n);
    for (int i = m.grid_n - 1; i >= 0; --i) {
        const double cur = rate(i);
        R[static_cast<std::size_t>(i)] = R[static_cast<std::size_t>(i + 1)] + 0.5 * h * (cur + next);
        next = cur;
    }
    return {Curve::sampled(std::move(P), m.T), Curve::sampled(std::move(Q), m.T),
            Curve::sampled(std::move(R), m.T)};
}

CoefficientSolution solve_coefficients(const MarketModel& m, double w, double beta) {
    CoefficientSolution sol;
    auto [phi, psi] = solve_mp_coefficients(m, w, beta);
    sol.phi = std::move(phi);
    sol.psi = std::move(psi);
    auto dpp = solve_dpp_coefficients(m, w, beta);
    sol.P = std::move(dpp.P);
    sol.Q = std::move(dpp.Q);
    sol.R = std::move(dpp.R);
    sol.theta = tabulate(m, [&m](double t) { return theta(m, t); });
    sol.lambda_cap = tabulate(m, [&m](double t) { return big_lambda(m, t); });
    sol.discount = tabulate(m, [sr = cumulative_to_horizon(m, [&m](double t) { return m.rho(t); })](
                                   double t) { return std::exp(-sr(t)); });
    sol.beta = beta;
    sol.w = w;
    return sol;
}

double mean_terminal_wealth(const MarketModel& m, double beta, double t) {
    const Curve drift = cumulative_from_zero(m, [&m](double s) { return m.rho(s) - theta(m, s); });
    const Curve th = cumulative_from_zero(m, [&m](double s) { return theta(m, s); });
    const Curve sr = cumulative_to_horizon(m, [&m](double s) { return m.rho(s); });
    return m.x0 * std::exp(drift(t)) + beta * std::exp(-sr(t)) * (1.0 - std::exp(-th(t)));
}

double terminal_second_moment(const MarketModel& m, double beta, int steps) {
    const Curve sr = cumulative_to_horizon(m, [&m](double s) { return m.rho(s); });
    auto rhs = [&](double t, double m2) {
        const double th = theta(m, t);
        const double tail = std::exp(-2.0 * sr(t));
        return (2.0 * m.rho(t) - th) * m2 + th * beta * beta * tail;
    };
    return rk4_endpoint(rhs, 0.0, m.T, m.x0 * m.x0, steps);
}

FrontierPoint frontier_variance(const MarketModel& m, double target_mean) {
    const double r0 = integrate(m, [&m](double s) { return m.rho(s); }, 0.0, m.T);
    const double h0 = integrate(m, [&m](double s) { return theta(m, s); }, 0.0, m.T);
    const double gap = target_mean - m.x0 * std::exp(r0);
    FrontierPoint pt;
    pt.target_mean = target_mean;
    pt.variance = gap * gap / (std::exp(h0) - 1.0);
    pt.beta = (target_mean - m.x0 * std::exp(r0 - h0)) / (1.0 - std::exp(-h0));
    return pt;
}

double beta_from_target_mean(const MarketModel& m, double target_mean) {
    const double r0 = integrate(m, [&m](double s) { return m.rho(s); }, 0.0, m.T);
    const double h0 = integrate(m, [&m](double s) { return theta(m, s); }, 0.0, m.T);
    return (target_mean - m.x0 * std::exp(r0 - h0)) / (1.0 - std::exp(-h0));
}

double beta_from_risk_weight(const MarketModel& m, double w) {
    if (!(w > 0.0)) throw Error(Errc::BadConfig, "risk weight w must be positive");
    // E X(T; beta) = A + B beta, so 2 w beta = 1 + 2 w (A + B beta) solves to
    // beta = (1 + 2 w A) / (2 w (1 - B)); B = 1 - e^{-int theta} lies in (0, 1).
    const double r0 = integrate(m, [&m](double s) { return m.rho(s); }, 0.0, m.T);
    const double h0 = integrate(m, [&m](double s) { return theta(m, s); }, 0.0, m.T);
    const double A = m.x0 * std::exp(r0 - h0);
    const double B = 1.0 - std::exp(-h0);
    return (1.0 + 2.0 * w * A) / (2.0 * w * (1.0 - B));
}

std::pair<double, double> constant_policy_moments(const MarketModel& m, double v, int steps) {
    const double h = m.T / steps;
    double E = m.x0;
    double m2 = m.x0 * m.x0;
    auto fE = [&](double t, double e) { return m.rho(t) * e + (m.mu(t) - m.rho(t)) * v; };
    for (int i = 0; i < steps; ++i) {
        const double t = m.T * static_cast<double>(i) / steps;
        // coupled RK4: m2 depends on E
        const double e1 = fE(t, E);
        const double q1 = 2.0 * m.rho(t) * m2 + 2.0 * (m.mu(t) - m.rho(t)) * v * E +
                          v * v * big_lambda(m, t);
        const double tm = t + 0.5 * h;
        const double e2 = fE(tm, E + 0.5 * h * e1);
        const double q2 = 2.0 * m.rho(tm) * (m2 + 0.5 * h * q1) +
                          2.0 * (m.mu(tm) - m.rho(tm)) * v * (E + 0.5 * h * e1) +
                          v * v * big_lambda(m, tm);
        const double e3 = fE(tm, E + 0.5 * h * e2);
        const double q3 = 2.0 * m.rho(tm) * (m2 + 0.5 * h * q2) +
                          2.0 * (m.mu(tm) - m.rho(tm)) * v * (E + 0.5 * h * e2) +
                          v * v * big_lambda(m, tm);
        const double te = t + h;
        const double e4 = fE(te, E + h * e3);
        const double q4 = 2.0 * m.rho(te) * (m2 + h * q3) +
                          2.0 * (m.mu(te) - m.rho(te)) * v * (E + h * e3) +
                          v * v * big_lambda(m, te);
        E += h / 6.0 * (e1 + 2.0 * e2 + 2.0 * e3 + e4);
        m2 += h / 6.0 * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
    }
    return {E, m2 - E * E};
}

double beta_from_risk_weight_fixed_point(const MarketModel& m, double w, double damping,
                                         double tol, int max_iter) {
    if (!(w > 0.0)) throw Error(Errc::BadConfig, "risk weight w must be positive");
    if (!(damping > 0.0 && damping <= 1.0))
        throw Error(Errc::BadConfig, "damping must lie in (0, 1]");
    double beta = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        const double target = (1.0 + 2.0 * w * mean_terminal_wealth(m, beta, m.T)) / (2.0 * w);
        const double next = (1.0 - damping) * beta + damping * target;
        const double delta = std::abs(next - beta);
        beta = next;
        if (delta < tol) return beta;
    }
    throw Error(Errc::NoConvergence,
                "beta fixed point did not reach tol=" + std::to_string(tol));
}

}  // namespace mvjump
