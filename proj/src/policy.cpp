#include "mvjump/policy.hpp"

#include <cmath>

#include "mvjump/errors.hpp"

namespace mvjump {

double ProblemSpec::y0(double x0) const { return std::sqrt(w) * (x0 - beta); }

std::pair<double, double> to_lq_coords(const ProblemSpec& spec, double X, double v) {
    if (!(spec.w > 0.0)) throw Error(Errc::BadConfig, "risk weight w must be positive");
    const double sw = std::sqrt(spec.w);
    return {sw * (X - spec.beta), sw * v};
}

std::pair<double, double> from_lq_coords(const ProblemSpec& spec, double y, double u) {
    if (!(spec.w > 0.0)) throw Error(Errc::BadConfig, "risk weight w must be positive");
    const double sw = std::sqrt(spec.w);
    return {spec.beta + y / sw, u / sw};
}

double optimal_control_y(const CoefficientSolution& sol, const MarketModel& m, double t, double y) {
    const double ratio = (m.mu(t) - m.rho(t)) / big_lambda(m, t);
    return -(y + sol.Q(t) / sol.P(t)) * ratio;
}

double optimal_control_x(const CoefficientSolution& sol, const MarketModel& m, double t, double X) {
    const double sw = std::sqrt(sol.w);
    return optimal_control_y(sol, m, t, sw * (X - sol.beta)) / sw;
}

FeedbackPolicy FeedbackPolicy::optimal(const MarketModel& m, double w, double beta, double shift) {
    if (!(w > 0.0)) throw Error(Errc::BadConfig, "risk weight w must be positive");
    FeedbackPolicy p;
    p.kind_ = Kind::Optimal;
    p.w_ = w;
    p.beta_ = beta;
    p.shift_ = shift;
    const Curve sr = cumulative_to_horizon(m, [&m](double t) { return m.rho(t); });
    p.discount_ = tabulate(m, [&sr](double t) { return std::exp(-sr(t)); });
    p.gain_ratio_ = tabulate(m, [&m](double t) { return (m.mu(t) - m.rho(t)) / big_lambda(m, t); });
    return p;
}

FeedbackPolicy FeedbackPolicy::constant(double v) {
    FeedbackPolicy p;
    p.kind_ = Kind::Constant;
    p.const_v_ = v;
    return p;
}

FeedbackPolicy FeedbackPolicy::zero() { return FeedbackPolicy{}; }

double FeedbackPolicy::operator()(double t, double X) const {
    switch (kind_) {
        case Kind::Zero: return 0.0;
        case Kind::Constant: return const_v_;
        case Kind::Optimal: return (beta_ * discount_(t) - X) * gain_ratio_(t) + shift_;
    }
    return 0.0;
}

}  // namespace mvjump
