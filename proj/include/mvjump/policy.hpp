// Optimal feedback controls in both coordinate systems, and the substitution
// between wealth coordinates (X, v) and the shifted LQ coordinates (y, u)
// with y = sqrt(w) (X - beta), u = sqrt(w) v.
#pragma once

#include <utility>

#include "mvjump/analytic.hpp"
#include "mvjump/curve.hpp"
#include "mvjump/model.hpp"

namespace mvjump {

/// The (w, beta) pair defining one LQ instance, plus the induced initial
/// state y0 = sqrt(w) (x0 - beta).
struct ProblemSpec {
    double w = 1.0;
    double beta = 0.0;

    double y0(double x0) const;
};

/// (X, v) -> (y, u).
std::pair<double, double> to_lq_coords(const ProblemSpec& spec, double X, double v);

/// (y, u) -> (X, v); exact round-trip with to_lq_coords up to one division.
std::pair<double, double> from_lq_coords(const ProblemSpec& spec, double y, double u);

/// Optimal control in LQ coordinates,
///   u*(t, y) = -(y + Q(t)/P(t)) (mu_t - rho_t) / Lambda_t,
/// which is the stationarity root of the Hamiltonian; the bracket equals
/// y + sqrt(w) beta (1 - e^{-int_t^T rho}).
double optimal_control_y(const CoefficientSolution& sol, const MarketModel& m, double t, double y);

/// Optimal investment in wealth coordinates,
///   v*(t, X) = (beta e^{-int_t^T rho} - X) (mu_t - rho_t) / Lambda_t,
/// evaluated through optimal_control_y so the two coordinate systems agree
/// identically.
double optimal_control_x(const CoefficientSolution& sol, const MarketModel& m, double t, double X);

/// State-feedback investment rule handed to the simulator. `optimal` may
/// carry a constant additive shift, used for optimality-gap experiments; the
/// constant and zero kinds exist for the same purpose.
class FeedbackPolicy {
public:
    enum class Kind { Optimal, Constant, Zero };

    static FeedbackPolicy optimal(const MarketModel& m, double w, double beta, double shift = 0.0);
    static FeedbackPolicy constant(double v);
    static FeedbackPolicy zero();

    /// Amount invested in the risky asset at (t, X).
    double operator()(double t, double X) const;

    Kind kind() const noexcept { return kind_; }
    double w() const noexcept { return w_; }
    double beta() const noexcept { return beta_; }
    double shift() const noexcept { return shift_; }
    double constant_value() const noexcept { return const_v_; }
    const Curve& discount() const noexcept { return discount_; }
    const Curve& gain_ratio() const noexcept { return gain_ratio_; }

private:
    Kind kind_ = Kind::Zero;
    double w_ = 1.0;
    double beta_ = 0.0;
    double shift_ = 0.0;
    double const_v_ = 0.0;
    Curve discount_;    // e^{-int_t^T rho}
    Curve gain_ratio_;  // (mu_t - rho_t) / Lambda_t
};

}  // namespace mvjump
