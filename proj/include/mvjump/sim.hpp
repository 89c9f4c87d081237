// Path simulation of the controlled wealth SDE
//   dX = [rho X + (mu - rho) v] dt + sigma v dB + v sum_k eta_k d(N_k - lambda_k t)
// and Monte Carlo estimation of terminal moments. Paths are independent work
// units driven by counter-based streams, so the OpenMP kernel and the serial
// reference implementation produce bit-identical results for any thread
// count; the aggregation is a fixed-order pairwise reduction.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mvjump/model.hpp"
#include "mvjump/policy.hpp"

namespace mvjump {

enum class JumpScheme {
    PoissonCount,    // one Poisson count per step and mark
    ExactJumpTimes,  // exponential interarrival times per mark
};

struct SimConfig {
    std::int64_t n_paths = 100000;
    double dt = 1e-3;
    std::uint64_t seed = 42;
    JumpScheme scheme = JumpScheme::PoissonCount;

    /// Number of Euler steps: T/dt rounded to the nearest integer, >= 1.
    int steps(double horizon) const;
};

/// Terminal-wealth statistics. `variance` is the unbiased (n-1) estimator;
/// the standard errors and the mean/variance covariance come from sample
/// central moments up to order four.
struct McEstimate {
    double mean = 0.0;
    double variance = 0.0;
    double se_mean = 0.0;
    double se_variance = 0.0;
    double cov_mean_variance = 0.0;
    std::int64_t n_paths = 0;
    std::uint64_t seed = 0;
};

/// Terminal wealth of one path. Depends only on (model, policy, cfg.seed,
/// cfg.dt, cfg.scheme, path_index), never on execution order.
double simulate_path(const MarketModel& m, const FeedbackPolicy& policy, const SimConfig& cfg,
                     std::int64_t path_index);

/// Wealth of one path observed at the given times (each snapped to the step
/// grid), same dynamics and randomness as simulate_path.
std::vector<double> simulate_path_at(const MarketModel& m, const FeedbackPolicy& policy,
                                     const SimConfig& cfg, std::int64_t path_index,
                                     std::span<const double> sample_times);

/// All terminal wealths, OpenMP-parallel over path index. Throws NonFinite
/// naming the lowest offending path index.
std::vector<double> run_paths(const MarketModel& m, const FeedbackPolicy& policy,
                              const SimConfig& cfg);

/// Serial reference implementation of run_paths, kept for testing; must be
/// bit-identical to the parallel kernel.
std::vector<double> run_paths_serial(const MarketModel& m, const FeedbackPolicy& policy,
                                     const SimConfig& cfg);

/// Deterministic pairwise-summation moments of a terminal-wealth sample.
McEstimate aggregate(std::span<const double> terminals, std::uint64_t seed);

McEstimate monte_carlo(const MarketModel& m, const FeedbackPolicy& policy, const SimConfig& cfg);
McEstimate monte_carlo_serial(const MarketModel& m, const FeedbackPolicy& policy,
                              const SimConfig& cfg);

/// Standard error of the scalarized objective w * variance - mean estimated
/// from a Monte Carlo run.
double objective_se(const McEstimate& est, double w);

}  // namespace mvjump
