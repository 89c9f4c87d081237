#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "mvjump/config.hpp"
#include "mvjump/errors.hpp"

using namespace mvjump;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << body;
    return path;
}

}  // namespace

TEST_CASE("parse_model: constants, samples, marks, defaults") {
    const auto j = nlohmann::json::parse(R"({
        "T": 2.0, "x0": 1.5,
        "rho": 0.03,
        "mu": {"samples": [0.1, 0.12, 0.11]},
        "sigma": 0.25,
        "marks": [{"eta": 0.05, "intensity": 0.7}]
    })");
    const MarketModel m = parse_model(j);
    CHECK(m.T == 2.0);
    CHECK(m.x0 == 1.5);
    CHECK(m.grid_n == 2000);  // default
    CHECK(m.rho(0.5) == 0.03);
    CHECK(m.mu(1.0) == 0.12);
    CHECK(m.mu.samples().size() == 3);
    REQUIRE(m.marks.size() == 1);
    CHECK(m.marks[0].intensity == 0.7);

    CHECK_THROWS_AS(parse_model(nlohmann::json::parse(R"({"T": 1})")), Error);
    CHECK_THROWS_AS(parse_model(nlohmann::json::parse(
                        R"({"T":1,"x0":1,"rho":{"foo":3},"mu":0.1,"sigma":0.1})")),
                    Error);
}

TEST_CASE("dump_model round-trips bit-exactly") {
    MarketModel m = fixtures::model_a();
    // awkward doubles on purpose
    m.rho = Curve::sampled({0.05, 0.05123456789012345, 1.0 / 3.0}, 1.0);
    m.x0 = 0.1 + 0.2;
    const auto dumped = dump_model(m);
    const MarketModel re = parse_model(nlohmann::json::parse(dumped.dump()));
    CHECK(re.T == m.T);
    CHECK(re.x0 == m.x0);
    CHECK(re.grid_n == m.grid_n);
    REQUIRE(re.rho.samples().size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(re.rho.samples()[i] == m.rho.samples()[i]);
    CHECK(re.mu.constant_value() == m.mu.constant_value());
    REQUIRE(re.marks.size() == 1);
    CHECK(re.marks[0].intensity == m.marks[0].intensity);
    // a second dump is byte-identical
    CHECK(dump_model(re).dump() == dumped.dump());
}

TEST_CASE("run config: file loading, defaults and overrides") {
    const auto path = write_temp("mvjump_cfg_test.json", R"({
        "model": {"T": 1.0, "x0": 1.0, "rho": 0.05, "mu": 0.15, "sigma": 0.2,
                  "marks": [{"eta": 0.1, "intensity": 1.0}]},
        "objective": {"risk_weight": 1.0},
        "paths": 5000, "dt": 0.002, "seed": 9, "scheme": "exact",
        "policy": "constant:0.25"
    })");
    const RunConfig cfg = load_run_config(path.string());
    CHECK(cfg.paths == 5000);
    CHECK(cfg.dt == 0.002);
    CHECK(cfg.seed == 9);
    CHECK(cfg.scheme == JumpScheme::ExactJumpTimes);
    CHECK(cfg.policy == "constant:0.25");
    CHECK(cfg.objective.risk_weight.has_value());
    const auto [w, beta] = resolve_objective(cfg);
    CHECK(w == 1.0);
    CHECK(beta == doctest::Approx(fixtures::kBetaRiskA).epsilon(1e-12));

    CHECK_THROWS_AS(load_run_config("/nonexistent/path.json"), Error);
}

TEST_CASE("model entry may reference a separate file") {
    const auto model_path = write_temp("mvjump_model_test.json",
                                       R"({"T":1.0,"x0":1.0,"rho":0.05,"mu":0.15,"sigma":0.2})");
    const auto cfg_path = write_temp(
        "mvjump_cfg_ref_test.json",
        std::string(R"({"model": ")") + model_path.filename().string() +
            R"(", "objective": {"target_mean": 1.2}})");
    const RunConfig cfg = load_run_config(cfg_path.string());
    CHECK(cfg.model.mu(0.0) == 0.15);
    const auto [w, beta] = resolve_objective(cfg);
    CHECK(w == 1.0);
    CHECK(beta == doctest::Approx(1.7236464586811575).epsilon(1e-12));
}

TEST_CASE("exactly one objective must be present") {
    RunConfig cfg;
    cfg.model = fixtures::model_a();
    CHECK_THROWS_AS(resolve_objective(cfg), Error);
    cfg.objective.risk_weight = 1.0;
    cfg.objective.target_mean = 1.2;
    CHECK_THROWS_AS(resolve_objective(cfg), Error);
    cfg.objective.target_mean.reset();
    CHECK_NOTHROW(resolve_objective(cfg));
}

TEST_CASE("policy strings") {
    RunConfig cfg;
    cfg.model = fixtures::model_a();
    cfg.policy = "constant:0.5";
    CHECK(make_policy(cfg, 1.0, 0.0)(0.1, 2.0) == 0.5);
    cfg.policy = "zero";
    CHECK(make_policy(cfg, 1.0, 0.0)(0.1, 2.0) == 0.0);
    cfg.policy = "constant:abc";
    CHECK_THROWS_AS(make_policy(cfg, 1.0, 0.0), Error);
    cfg.policy = "martingale";
    CHECK_THROWS_AS(make_policy(cfg, 1.0, 0.0), Error);
}

TEST_CASE("formatting and hashing helpers") {
    CHECK(format_sig(0.123456789123456, 9) == "0.123456789");
    CHECK(format_sig(1.0512710963760240, 12) == "1.05127109638");
    CHECK(format_sig(0.0, 9) == "0");

    CHECK(fnv1a64("") == 14695981039346656037ull);
    CHECK(fnv1a64("a") == 12638187200555641996ull);

    RunConfig cfg;
    cfg.model = fixtures::model_a();
    cfg.objective.risk_weight = 1.0;
    const auto h1 = config_hash(cfg);
    CHECK(h1 == config_hash(cfg));  // stable
    cfg.seed = 43;
    CHECK(config_hash(cfg) != h1);  // sensitive to the resolved inputs
}
