#include "mvjump/config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "mvjump/analytic.hpp"
#include "mvjump/errors.hpp"

namespace mvjump {

namespace {

using nlohmann::json;

Curve parse_curve(const json& j, double horizon, const char* name) {
    if (j.is_number()) return Curve::constant(j.get<double>());
    if (j.is_object() && j.contains("samples")) {
        const auto& s = j.at("samples");
        if (!s.is_array())
            throw Error(Errc::BadConfig, std::string(name) + ".samples must be an array");
        return Curve::sampled(s.get<std::vector<double>>(), horizon);
    }
    throw Error(Errc::BadConfig,
                std::string(name) + " must be a number or {\"samples\": [...]}");
}

json curve_json(const Curve& c) {
    if (c.is_constant()) return c.constant_value();
    json j;
    j["samples"] = c.samples();
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::BadConfig, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(Errc::BadConfig, path + ": " + e.what());
    }
    return j;
}

}  // namespace

MarketModel parse_model(const json& j) {
    MarketModel m;
    try {
        m.T = j.at("T").get<double>();
        m.x0 = j.at("x0").get<double>();
        if (j.contains("grid_n")) m.grid_n = j.at("grid_n").get<int>();
        m.rho = parse_curve(j.at("rho"), m.T, "rho");
        m.mu = parse_curve(j.at("mu"), m.T, "mu");
        m.sigma = parse_curve(j.at("sigma"), m.T, "sigma");
        if (j.contains("marks")) {
            for (const auto& mk : j.at("marks")) {
                JumpMark mark;
                mark.eta = parse_curve(mk.at("eta"), m.T, "marks[].eta");
                mark.intensity = mk.at("intensity").get<double>();
                m.marks.push_back(std::move(mark));
            }
        }
    } catch (const json::exception& e) {
        throw Error(Errc::BadConfig, std::string("model: ") + e.what());
    }
    return m;
}

nlohmann::ordered_json dump_model(const MarketModel& m) {
    nlohmann::ordered_json j;
    j["T"] = m.T;
    j["x0"] = m.x0;
    j["grid_n"] = m.grid_n;
    j["rho"] = curve_json(m.rho);
    j["mu"] = curve_json(m.mu);
    j["sigma"] = curve_json(m.sigma);
    j["marks"] = nlohmann::ordered_json::array();
    for (const JumpMark& mk : m.marks) {
        nlohmann::ordered_json e;
        e["eta"] = curve_json(mk.eta);
        e["intensity"] = mk.intensity;
        j["marks"].push_back(std::move(e));
    }
    return j;
}

RunConfig load_run_config(const std::string& path) {
    const json j = load_json_file(path);
    RunConfig cfg;
    try {
        if (!j.contains("model")) throw Error(Errc::BadConfig, "config needs a \"model\" entry");
        if (j.at("model").is_string()) {
            const auto model_path =
                std::filesystem::path(path).parent_path() / j.at("model").get<std::string>();
            cfg.model = parse_model(load_json_file(model_path.string()));
        } else {
            cfg.model = parse_model(j.at("model"));
        }
        if (j.contains("objective")) {
            const auto& o = j.at("objective");
            if (o.contains("risk_weight")) cfg.objective.risk_weight = o.at("risk_weight").get<double>();
            if (o.contains("target_mean")) cfg.objective.target_mean = o.at("target_mean").get<double>();
        }
        if (j.contains("paths")) cfg.paths = j.at("paths").get<std::int64_t>();
        if (j.contains("dt")) cfg.dt = j.at("dt").get<double>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("scheme")) {
            const auto s = j.at("scheme").get<std::string>();
            if (s == "euler") cfg.scheme = JumpScheme::PoissonCount;
            else if (s == "exact") cfg.scheme = JumpScheme::ExactJumpTimes;
            else throw Error(Errc::BadConfig, "scheme must be \"euler\" or \"exact\"");
        }
        if (j.contains("policy")) cfg.policy = j.at("policy").get<std::string>();
        if (j.contains("csv")) cfg.csv_path = j.at("csv").get<std::string>();
        if (j.contains("mean_min")) cfg.mean_min = j.at("mean_min").get<double>();
        if (j.contains("mean_max")) cfg.mean_max = j.at("mean_max").get<double>();
        if (j.contains("points")) cfg.points = j.at("points").get<int>();
        if (j.contains("out")) cfg.out_path = j.at("out").get<std::string>();
        if (j.contains("times")) cfg.times = j.at("times").get<std::vector<double>>();
        if (j.contains("at")) cfg.at = j.at("at").get<std::string>();
        if (j.contains("tol_fd")) cfg.tol_fd = j.at("tol_fd").get<double>();
        if (j.contains("tol_id")) cfg.tol_id = j.at("tol_id").get<double>();
        if (j.contains("z_max")) cfg.z_max = j.at("z_max").get<double>();
        if (j.contains("check_paths")) cfg.check_paths = j.at("check_paths").get<std::int64_t>();
    } catch (const json::exception& e) {
        throw Error(Errc::BadConfig, path + ": " + e.what());
    }
    return cfg;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t config_hash(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["model"] = dump_model(cfg.model);
    if (cfg.objective.risk_weight) j["risk_weight"] = *cfg.objective.risk_weight;
    if (cfg.objective.target_mean) j["target_mean"] = *cfg.objective.target_mean;
    j["paths"] = cfg.paths;
    j["dt"] = cfg.dt;
    j["seed"] = cfg.seed;
    j["scheme"] = (cfg.scheme == JumpScheme::PoissonCount) ? "euler" : "exact";
    j["policy"] = cfg.policy;
    return fnv1a64(j.dump());
}

std::string format_sig(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return buf;
}

FeedbackPolicy make_policy(const RunConfig& cfg, double w, double beta, double shift) {
    if (cfg.policy == "optimal") return FeedbackPolicy::optimal(cfg.model, w, beta, shift);
    if (cfg.policy == "zero") return FeedbackPolicy::zero();
    if (cfg.policy.rfind("constant:", 0) == 0) {
        try {
            return FeedbackPolicy::constant(std::stod(cfg.policy.substr(9)));
        } catch (const std::exception&) {
            throw Error(Errc::BadConfig, "bad constant policy: " + cfg.policy);
        }
    }
    throw Error(Errc::BadConfig, "policy must be optimal, zero or constant:<v>");
}

std::pair<double, double> resolve_objective(const RunConfig& cfg) {
    const bool has_w = cfg.objective.risk_weight.has_value();
    const bool has_m = cfg.objective.target_mean.has_value();
    if (has_w == has_m)
        throw Error(Errc::BadConfig,
                    "exactly one of objective.risk_weight / objective.target_mean is required");
    if (has_w) {
        const double w = *cfg.objective.risk_weight;
        return {w, beta_from_risk_weight(cfg.model, w)};
    }
    return {1.0, beta_from_target_mean(cfg.model, *cfg.objective.target_mean)};
}

}  // namespace mvjump
