// Error taxonomy shared by all mvjump components.
#pragma once

#include <stdexcept>
#include <string>

namespace mvjump {

enum class Errc {
    DriftDominance,   // mu_t <= rho_t (or rho_t <= 0) somewhere on the grid
    DegenerateNoise,  // Lambda_t = sigma^2 + sum lambda_k eta_k^2 <= 0
    BadIntensity,     // jump intensity <= 0
    BadHorizon,       // T <= 0
    BadWealth,        // x0 <= 0
    ReversedLimits,   // integrate(a, b) with a > b
    NonFinite,        // a state or coefficient became non-finite
    NoConvergence,    // fixed-point iteration exhausted its budget
    MismatchedSpec,   // coefficient solution and value function disagree on (w, beta)
    BadConfig,        // malformed config file / CLI input
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace mvjump
