#include "mvjump/duality.hpp"

#include <algorithm>
#include <cmath>

#include "mvjump/errors.hpp"
#include "mvjump/policy.hpp"

namespace mvjump {

ValueFunction value_function(const CoefficientSolution& sol) {
    return ValueFunction{sol.P, sol.Q, sol.R, sol.w, sol.beta};
}

ValueEval value_at(const ValueFunction& vf, double t, double y) {
    const double P = vf.P(t);
    const double Q = vf.Q(t);
    return {0.5 * P * y * y + Q * y + vf.R(t), P * y + Q, P};
}

AdjointState adjoint_at(const CoefficientSolution& sol, const MarketModel& m, double t, double y,
                        double u) {
    AdjointState a;
    const double phi = sol.phi(t);
    a.p = phi * y + sol.psi(t);
    a.q = phi * m.sigma(t) * u;
    a.r.reserve(m.marks.size());
    for (const JumpMark& mk : m.marks) a.r.push_back(phi * u * mk.eta(t));
    return a;
}

double hamiltonian_residual(const CoefficientSolution& sol, const MarketModel& m, double t,
                            double y, double u) {
    const AdjointState a = adjoint_at(sol, m, t, y, u);
    double res = (m.mu(t) - m.rho(t)) * a.p + m.sigma(t) * a.q;
    for (std::size_t k = 0; k < m.marks.size(); ++k)
        res += m.marks[k].eta(t) * a.r[k] * m.marks[k].intensity;
    return res;
}

HjbCoeffs hjb_residual(const CoefficientSolution& sol, const MarketModel& m, double t) {
    // Differences are centered on cell midpoints: (c_{i+1} - c_i)/h is
    // second-order there, and the stencil never straddles a node-aligned kink
    // of a sampled coefficient curve (node-centered stencils lose an order at
    // every kink).
    const double h = m.grid_dt();
    const int i = std::clamp(static_cast<int>(std::llround(t / h - 0.5)), 0, m.grid_n - 1);
    auto deriv = [&](const Curve& c) {
        return (c(m.grid_time(i + 1)) - c(m.grid_time(i))) / h;
    };
    const double tm = 0.5 * (m.grid_time(i) + m.grid_time(i + 1));
    const double th = theta(m, tm);
    const double rho = m.rho(tm);
    const double P = sol.P(tm);
    const double Q = sol.Q(tm);
    const double swb = std::sqrt(sol.w) * sol.beta;
    HjbCoeffs c;
    c.c2 = 0.5 * (deriv(sol.P) - (th - 2.0 * rho) * P);
    c.c1 = deriv(sol.Q) - (th - rho) * Q + swb * rho * P;
    c.c0 = deriv(sol.R) + (swb * rho - 0.5 * th * Q / P) * Q;
    return c;
}

DualityReport check_relations(const CoefficientSolution& sol, const ValueFunction& vf,
                              const MarketModel& m, std::span<const SamplePoint> samples) {
    if (vf.w != sol.w || vf.beta != sol.beta)
        throw Error(Errc::MismatchedSpec, "value function and coefficients use different (w, beta)");
    DualityReport rep;
    const auto n = static_cast<std::int64_t>(samples.size());
    double max_p = 0.0, max_q = 0.0, max_r = 0.0, max_h = 0.0;
#pragma omp parallel for schedule(static) reduction(max : max_p, max_q, max_r, max_h)
    for (std::int64_t idx = 0; idx < n; ++idx) {
        const SamplePoint s = samples[static_cast<std::size_t>(idx)];
        const double u = optimal_control_y(sol, m, s.t, s.y);
        const AdjointState a = adjoint_at(sol, m, s.t, s.y, u);
        const ValueEval ve = value_at(vf, s.t, s.y);
        max_p = std::max(max_p, std::abs(a.p + ve.Vy));
        max_q = std::max(max_q, std::abs(a.q + ve.Vyy * m.sigma(s.t) * u));
        for (std::size_t k = 0; k < m.marks.size(); ++k) {
            const double shifted = value_at(vf, s.t, s.y + u * m.marks[k].eta(s.t)).Vy;
            max_r = std::max(max_r, std::abs(-a.r[k] - (shifted - ve.Vy)));
        }
        max_h = std::max(max_h, std::abs(hamiltonian_residual(sol, m, s.t, s.y, u)));
    }
    rep.max_p_residual = max_p;
    rep.max_q_residual = max_q;
    rep.max_r_residual = max_r;
    rep.max_hamiltonian_residual = max_h;

    double c2 = 0.0, c1 = 0.0, c0 = 0.0;
#pragma omp parallel for schedule(static) reduction(max : c2, c1, c0)
    for (int i = 0; i < m.grid_n; ++i) {
        const HjbCoeffs c = hjb_residual(sol, m, m.grid_time(i) + 0.5 * m.grid_dt());
        c2 = std::max(c2, std::abs(c.c2));
        c1 = std::max(c1, std::abs(c.c1));
        c0 = std::max(c0, std::abs(c.c0));
    }
    rep.hjb_coeff_residuals = {c2, c1, c0};
    return rep;
}

std::vector<SamplePoint> grid_samples(const MarketModel& m, int nt, int ny, double y_min,
                                      double y_max) {
    std::vector<SamplePoint> out;
    out.reserve(static_cast<std::size_t>(nt) * static_cast<std::size_t>(ny));
    for (int it = 0; it < nt; ++it) {
        // Snap to the nearest grid node so tabulated curves are evaluated
        // exactly at their samples.
        const double frac = (nt == 1) ? 0.0 : static_cast<double>(it) / (nt - 1);
        const int node = static_cast<int>(std::llround(frac * m.grid_n));
        const double t = m.grid_time(node);
        for (int iy = 0; iy < ny; ++iy) {
            const double fy = (ny == 1) ? 0.0 : static_cast<double>(iy) / (ny - 1);
            out.push_back({t, y_min + fy * (y_max - y_min)});
        }
    }
    return out;
}

std::vector<SamplePoint> path_samples(const MarketModel& m, const CoefficientSolution& sol,
                                      const SimConfig& cfg, int n_paths, int n_times) {
    std::vector<double> times(static_cast<std::size_t>(n_times));
    for (int i = 0; i < n_times; ++i)
        times[static_cast<std::size_t>(i)] = m.T * static_cast<double>(i + 1) / n_times;
    const FeedbackPolicy policy = FeedbackPolicy::optimal(m, sol.w, sol.beta);
    const double sw = std::sqrt(sol.w);
    std::vector<SamplePoint> out(static_cast<std::size_t>(n_paths) * times.size());
#pragma omp parallel for schedule(static)
    for (int p = 0; p < n_paths; ++p) {
        const std::vector<double> xs = simulate_path_at(m, policy, cfg, p, times);
        for (std::size_t i = 0; i < times.size(); ++i)
            out[static_cast<std::size_t>(p) * times.size() + i] =
                SamplePoint{times[i], sw * (xs[i] - sol.beta)};
    }
    return out;
}

}  // namespace mvjump
