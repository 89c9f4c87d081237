// Config file ingestion (JSON), the resolved run configuration shared by all
// CLI commands, and small report-formatting helpers.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mvjump/model.hpp"
#include "mvjump/sim.hpp"

namespace mvjump {

/// Objective selector: exactly one of the two is set.
struct Objective {
    std::optional<double> risk_weight;  // w > 0
    std::optional<double> target_mean;  // M
};

struct RunConfig {
    MarketModel model;
    Objective objective;

    // simulate
    std::int64_t paths = 100000;
    double dt = 1e-3;
    std::uint64_t seed = 42;
    JumpScheme scheme = JumpScheme::PoissonCount;
    std::string policy = "optimal";  // optimal | zero | constant:<v>
    std::string csv_path;            // optional per-path dump

    // frontier
    double mean_min = 0.0;
    double mean_max = 0.0;
    int points = 11;
    std::string out_path;  // empty = stdout

    // solve
    std::vector<double> times;          // coefficient tabulation times
    std::optional<std::string> at;      // "t,X" for a pointwise control query

    // check
    double tol_fd = 1e-6;   // finite-difference residuals
    double tol_id = 1e-10;  // algebraic identities
    double z_max = 3.0;     // Monte Carlo moment z-scores
    std::int64_t check_paths = 20000;
};

/// Parse a model object ({"T":..., "x0":..., "grid_n":..., "rho":..., "mu":...,
/// "sigma":..., "marks":[...]}); curves are numbers or {"samples": [...]}.
MarketModel parse_model(const nlohmann::json& j);

/// Serialize a model so that re-parsing reproduces it bit-exactly.
nlohmann::ordered_json dump_model(const MarketModel& m);

/// Load a run configuration; "model" may be an inline object or a path to a
/// model file (resolved relative to the config file's directory).
RunConfig load_run_config(const std::string& path);

/// Hash of the canonical serialized configuration, embedded in reports.
/// Excludes anything runtime-dependent (thread counts, timings).
std::uint64_t config_hash(const RunConfig& cfg);

/// FNV-1a over bytes.
std::uint64_t fnv1a64(const std::string& bytes);

/// Value formatted with the given number of significant digits.
std::string format_sig(double value, int digits);

FeedbackPolicy make_policy(const RunConfig& cfg, double w, double beta, double shift = 0.0);

/// Resolve (w, beta) from the objective: risk-weight mode solves the
/// embedding fixed point; target-mean mode inverts the mean map and reports
/// w = 1 (the control does not depend on w once beta is fixed).
std::pair<double, double> resolve_objective(const RunConfig& cfg);

}  // namespace mvjump
