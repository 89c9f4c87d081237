// Deterministic coefficient curves: constants or uniformly sampled functions
// on [0, T] with linear interpolation.
#pragma once

#include <cstddef>
#include <vector>

namespace mvjump {

/// A deterministic function of time on [0, T]. Either an exact constant or a
/// piecewise-linear interpolant of uniform samples. Immutable after
/// construction; evaluation is safe from any number of threads.
class Curve {
public:
    /// Defaults to the constant 0.
    Curve() = default;

    static Curve constant(double value);

    /// `samples` are values at t = i * horizon / (n - 1), n >= 2.
    static Curve sampled(std::vector<double> samples, double horizon);

    bool is_constant() const noexcept { return samples_.empty(); }

    /// Evaluate at time t. Sampled curves clamp t to [0, horizon]; exact at
    /// sample nodes.
    double operator()(double t) const;

    double constant_value() const { return value_; }
    const std::vector<double>& samples() const { return samples_; }
    double horizon() const { return horizon_; }

private:
    double value_ = 0.0;            // constant representation
    std::vector<double> samples_;   // empty <=> constant
    double horizon_ = 0.0;
};

}  // namespace mvjump
