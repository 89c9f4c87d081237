// Counter-based random numbers for schedule-independent Monte Carlo. Every
// draw is a pure function of (seed, path_index, stream, draw), so a path
// produces the same numbers no matter how work is split across threads.
// Philox4x32-10 block cipher; normals by inverse CDF.
#pragma once

#include <array>
#include <cstdint>

namespace mvjump {

/// One Philox4x32-10 block: 128-bit counter, 64-bit key, 128-bit output.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Inverse of the standard normal CDF (Wichura's PPND16 rational
/// approximations), accurate to about 1e-15 for p in (0, 1).
double inverse_normal_cdf(double p);

/// Deterministic per-path random stream. `stream` separates purposes
/// (diffusion noise, per-mark jump counts, per-mark arrival times) and `draw`
/// indexes consecutive variates within a stream.
class PathStream {
public:
    PathStream(std::uint64_t seed, std::uint64_t path_index) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          path_lo_(static_cast<std::uint32_t>(path_index)),
          path_hi_(static_cast<std::uint32_t>(path_index >> 32)) {}

    /// Uniform on the open interval (0, 1).
    double uniform(std::uint32_t stream, std::uint32_t draw) const noexcept;

    /// Standard normal via inverse CDF of uniform().
    double normal(std::uint32_t stream, std::uint32_t draw) const noexcept;

    /// Poisson count with the given mean, by CDF inversion of one uniform.
    std::uint32_t poisson(double mean, std::uint32_t stream, std::uint32_t draw) const noexcept;

    /// Exponential interarrival time with the given rate.
    double exponential(double rate, std::uint32_t stream, std::uint32_t draw) const noexcept;

    // Stream ids used by the simulator.
    static constexpr std::uint32_t kDiffusion = 0;          // draw = step index
    static constexpr std::uint32_t kPoissonBase = 1;        // stream 1 + k, draw = step
    static constexpr std::uint32_t kArrivalBase = 0x8000u;  // stream base + k, draw = ordinal

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t path_lo_;
    std::uint32_t path_hi_;
};

}  // namespace mvjump
