// Verification machinery connecting the two solution routes: the quadratic
// value function V(t,y) = P y^2/2 + Q y + R, the adjoint triple
// (p, q, r_k) = (phi y + psi, phi sigma u, phi u eta_k), the Hamiltonian
// stationarity condition, the residuals of the three coefficient ODEs inside
// the minimized generator, and the pointwise relations
//   p = -V_y,   q = -V_yy sigma u*,   -r_k = V_y(t, y* + u* eta_k) - V_y(t, y*),
// checked on (t, y) grids and along simulated optimal paths.
#pragma once

#include <array>
#include <span>
#include <vector>

#include "mvjump/analytic.hpp"
#include "mvjump/model.hpp"
#include "mvjump/sim.hpp"

namespace mvjump {

struct ValueFunction {
    Curve P, Q, R;
    double w = 1.0;   // provenance: the (w, beta) the curves were solved for
    double beta = 0.0;
};

ValueFunction value_function(const CoefficientSolution& sol);

struct ValueEval {
    double V;    // P y^2 / 2 + Q y + R
    double Vy;   // P y + Q
    double Vyy;  // P
};

ValueEval value_at(const ValueFunction& vf, double t, double y);

struct AdjointState {
    double p = 0.0;
    double q = 0.0;
    std::vector<double> r;  // one entry per jump mark
};

AdjointState adjoint_at(const CoefficientSolution& sol, const MarketModel& m, double t, double y,
                        double u);

/// dH/du = (mu - rho) p + sigma q + sum_k eta_k r_k lambda_k with the adjoint
/// built at (t, y, u); affine in u with slope phi Lambda < 0 and root at the
/// optimal control.
double hamiltonian_residual(const CoefficientSolution& sol, const MarketModel& m, double t,
                            double y, double u);

/// The three bracket coefficients of the minimized generator applied to the
/// quadratic ansatz, evaluated at the grid cell midpoint nearest t, with
/// P', Q', R' as centered two-point differences across the cell:
///   c2 = [P' - (theta - 2 rho) P] / 2
///   c1 = Q' - (theta - rho) Q + sqrt(w) beta rho P
///   c0 = R' + [sqrt(w) beta rho - theta Q / (2P)] Q
/// All three vanish (to O(h^2) differencing error) when P, Q, R solve their
/// ODEs.
struct HjbCoeffs {
    double c2, c1, c0;
};

HjbCoeffs hjb_residual(const CoefficientSolution& sol, const MarketModel& m, double t);

struct SamplePoint {
    double t, y;
};

struct DualityReport {
    double max_p_residual = 0.0;
    double max_q_residual = 0.0;
    double max_r_residual = 0.0;
    double max_hamiltonian_residual = 0.0;
    std::array<double, 3> hjb_coeff_residuals{0.0, 0.0, 0.0};  // max |c2|, |c1|, |c0|
};

/// Evaluates the adjoint/value relations and Hamiltonian stationarity at
/// u* = optimal_control_y over the given samples, plus the HJB bracket maxima
/// over interior grid nodes. Throws MismatchedSpec if sol and vf were built
/// for different (w, beta).
DualityReport check_relations(const CoefficientSolution& sol, const ValueFunction& vf,
                              const MarketModel& m, std::span<const SamplePoint> samples);

/// nt x ny sample grid; times are snapped to model grid nodes, states span
/// [y_min, y_max].
std::vector<SamplePoint> grid_samples(const MarketModel& m, int nt, int ny, double y_min,
                                      double y_max);

/// Samples (t, y*) along simulated optimal paths: n_paths paths observed at
/// n_times evenly spaced times, mapped to LQ coordinates.
std::vector<SamplePoint> path_samples(const MarketModel& m, const CoefficientSolution& sol,
                                      const SimConfig& cfg, int n_paths, int n_times);

}  // namespace mvjump
