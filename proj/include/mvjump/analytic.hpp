// Closed-form machinery for the mean-variance problem under the jump
// diffusion: the deterministic coefficient functions behind the adjoint
// process (phi, psi) and the quadratic value function (P, Q, R), terminal
// wealth moments, the efficient frontier, and the two routes for resolving
// the wealth-shift parameter beta (target terminal mean, or risk weight via
// the embedding fixed point).
//
// Coefficient system, with theta = (mu-rho)^2 / Lambda and suffix integrals
// I_f(t) = int_t^T f ds:
//
//   P'(t) = (theta - 2 rho) P,             P(T) = 1   =>  P = exp(I_{2 rho - theta})
//   Q'(t) = (theta - rho) Q - sqrt(w) beta rho P, Q(T) = 0
//                                          =>  Q = sqrt(w) beta P (1 - exp(-I_rho))
//   R'(t) = -[sqrt(w) beta rho - theta Q / (2P)] Q,  R(T) = 0   (quadrature)
//   phi = -P,  psi = -Q.
#pragma once

#include <utility>

#include "mvjump/curve.hpp"
#include "mvjump/model.hpp"

namespace mvjump {

/// All deterministic coefficients for one (model, w, beta) instance,
/// tabulated on the model grid. Pure data; safe to share across threads.
struct CoefficientSolution {
    Curve phi;         // adjoint slope, phi(T) = -1
    Curve psi;         // adjoint intercept, psi(T) = 0
    Curve P;           // value-function curvature, P(T) = 1, P > 0
    Curve Q;           // value-function slope, Q(T) = 0
    Curve R;           // value-function constant, R(T) = 0
    Curve theta;       // (mu-rho)^2 / Lambda
    Curve lambda_cap;  // Lambda_t
    Curve discount;    // exp(-int_t^T rho ds)
    double beta = 0.0;
    double w = 1.0;    // risk weight (variance multiplier in the scalarized objective)
};

struct FrontierPoint {
    double target_mean = 0.0;  // M = E X(T)
    double variance = 0.0;     // Var X(T) on the frontier
    double beta = 0.0;         // wealth-shift parameter achieving M
};

/// MP-route coefficients (phi, psi) on the model grid.
std::pair<Curve, Curve> solve_mp_coefficients(const MarketModel& m, double w, double beta);

/// DPP-route coefficients (P, Q, R); R by backward trapezoid quadrature.
struct DppCoefficients {
    Curve P, Q, R;
};
DppCoefficients solve_dpp_coefficients(const MarketModel& m, double w, double beta);

/// Both routes plus theta, Lambda and the risk-free discount, bundled.
CoefficientSolution solve_coefficients(const MarketModel& m, double w, double beta);

/// E X(t) under the optimal feedback policy with shift beta:
///   x0 e^{int_0^t (rho-theta)} + beta e^{-int_t^T rho} (1 - e^{-int_0^t theta}).
double mean_terminal_wealth(const MarketModel& m, double beta, double t);

/// E X(T)^2 under the optimal policy, by RK4 on
///   m2' = (2 rho - theta) m2 + theta beta^2 e^{-2 int_t^T rho},  m2(0) = x0^2.
double terminal_second_moment(const MarketModel& m, double beta, int steps = 10000);

/// Frontier point at a given target mean M:
///   Var = (M - x0 e^{int rho})^2 / (e^{int theta} - 1),
/// with the beta that realizes M.
FrontierPoint frontier_variance(const MarketModel& m, double target_mean);

/// beta solving E X(T) = target_mean (linear in beta).
double beta_from_target_mean(const MarketModel& m, double target_mean);

/// beta for the scalarized objective -E X(T) + w Var X(T): the unique root of
/// 2 w beta = 1 + 2 w E X(T; beta), solved through the linear structure of
/// the mean. Canonical route.
double beta_from_risk_weight(const MarketModel& m, double w);

/// The same root by damped fixed-point iteration
///   beta <- (1-damping) beta + damping (1 + 2 w E X(T; beta)) / (2 w),
/// kept as an independent oracle for the linear solve. Throws NoConvergence
/// if |delta| fails to reach tol within max_iter.
double beta_from_risk_weight_fixed_point(const MarketModel& m, double w, double damping = 1.0,
                                         double tol = 1e-13, int max_iter = 200);

/// (E X(T), Var X(T)) for a constant investment amount v, by RK4 on
///   E' = rho E + (mu - rho) v,   m2' = 2 rho m2 + 2 (mu - rho) v E + v^2 Lambda.
/// The compensated jump term contributes no drift, only the Lambda part of
/// the quadratic variation.
std::pair<double, double> constant_policy_moments(const MarketModel& m, double v,
                                                  int steps = 10000);

}  // namespace mvjump
