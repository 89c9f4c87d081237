// Jump-diffusion market model: risk-free rate rho, risky drift mu, volatility
// sigma, and a finite family of jump marks (eta_k(t), lambda_k). Derived
// quantities Lambda_t, theta(t) and the trapezoid quadrature used by every
// closed form live here.
#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "mvjump/curve.hpp"
#include "mvjump/errors.hpp"

namespace mvjump {

/// One atom of the jump measure: amplitude curve eta_k(t) with arrival
/// intensity lambda_k (events per unit time, > 0).
struct JumpMark {
    Curve eta;
    double intensity = 0.0;
};

/// Market model over [0, T]. Construction does not validate; call
/// validate_model before relying on the invariants (mu > rho, Lambda > 0).
/// Immutable in practice: nothing in the library mutates a model after
/// validation, so concurrent reads are safe.
struct MarketModel {
    double T = 1.0;     // horizon in years
    double x0 = 1.0;    // initial wealth
    Curve rho;          // risk-free rate, > 0
    Curve mu;           // risky drift, > rho
    Curve sigma;        // diffusion volatility
    std::vector<JumpMark> marks;
    int grid_n = 2000;  // quadrature/ODE grid intervals

    int grid_points() const noexcept { return grid_n + 1; }
    double grid_dt() const noexcept { return T / grid_n; }
    double grid_time(int i) const noexcept { return T * static_cast<double>(i) / grid_n; }
};

/// Checks every model invariant at every grid node and returns the model
/// unchanged. Throws Error with code DriftDominance, DegenerateNoise,
/// BadIntensity, BadHorizon or BadWealth. Sampled curves are only checked at
/// grid nodes; pathological behaviour between nodes is the caller's problem.
const MarketModel& validate_model(const MarketModel& m);

/// Lambda_t = sigma_t^2 + sum_k lambda_k eta_k(t)^2.
double big_lambda(const MarketModel& m, double t);

/// theta(t) = (mu_t - rho_t)^2 / Lambda_t, the jump-adjusted squared market
/// price of risk.
double theta(const MarketModel& m, double t);

/// Composite trapezoid of f over [a, b] on the model grid, with partial cells
/// clipped at a and b. Exact for integrands that are linear between grid
/// nodes. Throws ReversedLimits if a > b.
template <class F>
double integrate(const MarketModel& m, F&& f, double a, double b) {
    if (a > b) throw Error(Errc::ReversedLimits, "integrate called with a > b");
    a = std::max(a, 0.0);
    b = std::min(b, m.T);
    if (a >= b) return 0.0;
    const double h = m.grid_dt();
    const int ia = std::min(static_cast<int>(a / h), m.grid_n - 1);
    const int ib = std::min(static_cast<int>(b / h), m.grid_n - 1);
    if (ia == ib)  // both limits inside one cell
        return 0.5 * (b - a) * (f(a) + f(b));
    double sum = 0.5 * (m.grid_time(ia + 1) - a) * (f(a) + f(m.grid_time(ia + 1)));
    double prev = f(m.grid_time(ia + 1));
    for (int i = ia + 1; i < ib; ++i) {
        const double next = f(m.grid_time(i + 1));
        sum += 0.5 * h * (prev + next);
        prev = next;
    }
    sum += 0.5 * (b - m.grid_time(ib)) * (prev + f(b));
    return sum;
}

double integrate(const MarketModel& m, const Curve& f, double a, double b);

/// Sample f at the grid nodes of m.
template <class F>
Curve tabulate(const MarketModel& m, F&& f) {
    std::vector<double> v(static_cast<std::size_t>(m.grid_points()));
    for (int i = 0; i <= m.grid_n; ++i) v[static_cast<std::size_t>(i)] = f(m.grid_time(i));
    return Curve::sampled(std::move(v), m.T);
}

/// Prefix integrals t -> int_0^t f ds by trapezoid accumulation on the grid.
template <class F>
Curve cumulative_from_zero(const MarketModel& m, F&& f) {
    std::vector<double> c(static_cast<std::size_t>(m.grid_points()));
    const double h = m.grid_dt();
    c[0] = 0.0;
    double prev = f(m.grid_time(0));
    for (int i = 0; i < m.grid_n; ++i) {
        const double next = f(m.grid_time(i + 1));
        c[static_cast<std::size_t>(i + 1)] = c[static_cast<std::size_t>(i)] + 0.5 * h * (prev + next);
        prev = next;
    }
    return Curve::sampled(std::move(c), m.T);
}

/// Suffix integrals t -> int_t^T f ds, accumulated backward from T.
template <class F>
Curve cumulative_to_horizon(const MarketModel& m, F&& f) {
    std::vector<double> c(static_cast<std::size_t>(m.grid_points()));
    const double h = m.grid_dt();
    c[static_cast<std::size_t>(m.grid_n)] = 0.0;
    double next = f(m.grid_time(m.grid_n));
    for (int i = m.grid_n - 1; i >= 0; --i) {
        const double prev = f(m.grid_time(i));
        c[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i + 1)] + 0.5 * h * (prev + next);
        next = prev;
    }
    return Curve::sampled(std::move(c), m.T);
}

}  // namespace mvjump
