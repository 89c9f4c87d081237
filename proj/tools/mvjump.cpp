// mvjump: closed-form mean-variance portfolio selection under a jump
// diffusion, cross-validated by numerical ODE integration and Monte Carlo.
//
// Commands: solve | frontier | simulate | check, each driven by a JSON config
// (see README). MVJUMP_THREADS caps the simulation workers; results are
// invariant to its value.
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mvjump/analytic.hpp"
#include "mvjump/config.hpp"
#include "mvjump/duality.hpp"
#include "mvjump/errors.hpp"
#include "mvjump/model.hpp"
#include "mvjump/ode.hpp"
#include "mvjump/policy.hpp"
#include "mvjump/sim.hpp"

namespace {

using namespace mvjump;

constexpr int kReportDigits = 9;
constexpr int kCsvDigits = 12;

std::string sig(double v) { return format_sig(v, kReportDigits); }

std::string hash_line(const RunConfig& cfg) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    return std::string("config_hash=") + buf;
}

// Closed-form terminal moments for the configured policy, when available.
struct ClosedFormMoments {
    bool available = false;
    double mean = 0.0;
    double variance = 0.0;
};

ClosedFormMoments closed_form_moments(const RunConfig& cfg, const FeedbackPolicy& policy) {
    ClosedFormMoments cf;
    switch (policy.kind()) {
        case FeedbackPolicy::Kind::Optimal: {
            if (policy.shift() != 0.0) return cf;
            cf.available = true;
            cf.mean = mean_terminal_wealth(cfg.model, policy.beta(), cfg.model.T);
            cf.variance =
                terminal_second_moment(cfg.model, policy.beta()) - cf.mean * cf.mean;
            return cf;
        }
        case FeedbackPolicy::Kind::Zero: {
            cf.available = true;
            const double r0 =
                integrate(cfg.model, [&](double s) { return cfg.model.rho(s); }, 0.0, cfg.model.T);
            cf.mean = cfg.model.x0 * std::exp(r0);
            cf.variance = 0.0;
            return cf;
        }
        case FeedbackPolicy::Kind::Constant: {
            cf.available = true;
            const auto [mean, var] = constant_policy_moments(cfg.model, policy.constant_value());
            cf.mean = mean;
            cf.variance = var;
            return cf;
        }
    }
    return cf;
}

int cmd_solve(const RunConfig& cfg, bool dump_model_only) {
    if (dump_model_only) {
        std::cout << dump_model(cfg.model).dump(2) << "\n";
        return 0;
    }
    validate_model(cfg.model);
    const auto [w, beta] = resolve_objective(cfg);
    const CoefficientSolution sol = solve_coefficients(cfg.model, w, beta);
    const double mean = mean_terminal_wealth(cfg.model, beta, cfg.model.T);
    const double var = terminal_second_moment(cfg.model, beta) - mean * mean;

    std::cout << hash_line(cfg) << "\n";
    if (cfg.objective.risk_weight) {
        std::cout << "objective=risk_weight w=" << sig(w) << "\n";
        std::cout << "beta=" << sig(beta) << " lambda_hat=" << sig(2.0 * w * beta) << "\n";
    } else {
        std::cout << "objective=target_mean M=" << sig(*cfg.objective.target_mean) << "\n";
        std::cout << "beta=" << sig(beta) << "\n";
    }
    std::cout << "E_XT=" << sig(mean) << " Var_XT=" << sig(var)
              << " std_XT=" << sig(std::sqrt(std::max(var, 0.0))) << "\n";

    std::vector<double> times = cfg.times;
    if (times.empty()) times = {0.0, 0.5 * cfg.model.T, cfg.model.T};
    for (double t : times) {
        std::cout << "t=" << sig(t) << " phi=" << sig(sol.phi(t)) << " psi=" << sig(sol.psi(t))
                  << " P=" << sig(sol.P(t)) << " Q=" << sig(sol.Q(t)) << " R=" << sig(sol.R(t))
                  << " theta=" << sig(sol.theta(t)) << " Lambda=" << sig(sol.lambda_cap(t))
                  << "\n";
    }
    if (cfg.at) {
        double t = 0.0, X = 0.0;
        char comma = 0;
        std::istringstream is(*cfg.at);
        if (!(is >> t >> comma >> X) || comma != ',')
            throw Error(Errc::BadConfig, "--at expects t,X");
        std::cout << "v_hat(t=" << sig(t) << ",X=" << sig(X)
                  << ")=" << sig(optimal_control_x(sol, cfg.model, t, X)) << "\n";
    }
    return 0;
}

int cmd_frontier(const RunConfig& cfg) {
    validate_model(cfg.model);
    if (cfg.points < 2) throw Error(Errc::BadConfig, "frontier needs points >= 2");
    if (!(cfg.mean_min < cfg.mean_max))
        throw Error(Errc::BadConfig, "frontier needs mean_min < mean_max");
    std::ostringstream out;
    out << "target_mean,variance,std_dev,beta\n";
    for (int i = 0; i < cfg.points; ++i) {
        const double M = cfg.mean_min +
                         (cfg.mean_max - cfg.mean_min) * static_cast<double>(i) / (cfg.points - 1);
        const FrontierPoint pt = frontier_variance(cfg.model, M);
        out << format_sig(pt.target_mean, kCsvDigits) << ','
            << format_sig(pt.variance, kCsvDigits) << ','
            << format_sig(std::sqrt(pt.variance), kCsvDigits) << ','
            << format_sig(pt.beta, kCsvDigits) << "\n";
    }
    if (cfg.out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(cfg.out_path);
        if (!f) throw Error(Errc::BadConfig, "cannot write " + cfg.out_path);
        f << out.str();
    }
    return 0;
}

int cmd_simulate(const RunConfig& cfg) {
    validate_model(cfg.model);
    double w = 1.0, beta = 0.0;
    if (cfg.policy == "optimal") {
        auto resolved = resolve_objective(cfg);
        w = resolved.first;
        beta = resolved.second;
    }
    const FeedbackPolicy policy = make_policy(cfg, w, beta);
    SimConfig sim;
    sim.n_paths = cfg.paths;
    sim.dt = cfg.dt;
    sim.seed = cfg.seed;
    sim.scheme = cfg.scheme;
    const std::vector<double> terminals = run_paths(cfg.model, policy, sim);
    const McEstimate est = aggregate(terminals, sim.seed);
    const ClosedFormMoments cf = closed_form_moments(cfg, policy);

    std::ostringstream line;
    line << "simulate paths=" << est.n_paths << " dt=" << sig(sim.dt) << " seed=" << est.seed
         << " scheme=" << (sim.scheme == JumpScheme::PoissonCount ? "euler" : "exact")
         << " policy=" << cfg.policy << " " << hash_line(cfg)
         << " mean=" << sig(est.mean) << " se_mean=" << sig(est.se_mean)
         << " variance=" << sig(est.variance) << " se_variance=" << sig(est.se_variance);
    if (cf.available) {
        line << " cf_mean=" << sig(cf.mean) << " cf_variance=" << sig(cf.variance);
        line << " z_mean=";
        if (est.se_mean > 0.0) line << sig((est.mean - cf.mean) / est.se_mean);
        else line << "na";
        line << " z_variance=";
        if (est.se_variance > 0.0) line << sig((est.variance - cf.variance) / est.se_variance);
        else line << "na";
    }
    std::cout << line.str() << "\n";

    if (!cfg.csv_path.empty()) {
        std::ofstream f(cfg.csv_path);
        if (!f) throw Error(Errc::BadConfig, "cannot write " + cfg.csv_path);
        f << "path_index,terminal_wealth\n";
        for (std::size_t i = 0; i < terminals.size(); ++i)
            f << i << ',' << format_sig(terminals[i], kCsvDigits) << "\n";
    }
    return 0;
}

struct CheckRow {
    std::string name;
    double value;
    double limit;
    bool pass;
};

int cmd_check(const RunConfig& cfg, bool as_json) {
    validate_model(cfg.model);
    const auto [w, beta] = resolve_objective(cfg);
    const CoefficientSolution sol = solve_coefficients(cfg.model, w, beta);
    const MarketModel& m = cfg.model;
    std::vector<CheckRow> rows;
    auto add = [&rows](const std::string& name, double value, double limit) {
        rows.push_back({name, value, limit, value <= limit});
    };

    // Algebraic identities between the two coefficient routes.
    double id_phi = 0.0, id_psi = 0.0;
    for (int i = 0; i <= m.grid_n; ++i) {
        const double t = m.grid_time(i);
        id_phi = std::max(id_phi, std::abs(sol.phi(t) + sol.P(t)));
        id_psi = std::max(id_psi, std::abs(sol.psi(t) + sol.Q(t)));
    }
    add("identity.phi_plus_P", id_phi, cfg.tol_id);
    add("identity.psi_plus_Q", id_psi, cfg.tol_id);

    // RK4 oracle vs closed forms (sup over the oracle grid).
    {
        constexpr int kSteps = 10000;
        auto sup_err = [&](const Curve& numeric, const Curve& closed) {
            double e = 0.0;
            for (int i = 0; i <= kSteps; ++i) {
                const double t = m.T * static_cast<double>(i) / kSteps;
                e = std::max(e, std::abs(numeric(t) - closed(t)));
            }
            return e;
        };
        auto th = [&m](double t) { return theta(m, t); };
        const Curve phi_n = ode_numeric_oracle(
            {[&](double t) { return th(t) - 2.0 * m.rho(t); }, {}}, -1.0, m.T, kSteps);
        const Curve P_n = ode_numeric_oracle(
            {[&](double t) { return th(t) - 2.0 * m.rho(t); }, {}}, 1.0, m.T, kSteps);
        const double swb = std::sqrt(w) * beta;
        const Curve psi_n = ode_numeric_oracle(
            {[&](double t) { return th(t) - m.rho(t); },
             [&, phi_n](double t) { return -swb * m.rho(t) * phi_n(t); }},
            0.0, m.T, kSteps);
        const Curve Q_n = ode_numeric_oracle(
            {[&](double t) { return th(t) - m.rho(t); },
             [&, P_n](double t) { return -swb * m.rho(t) * P_n(t); }},
            0.0, m.T, kSteps);
        const Curve R_n = ode_numeric_oracle(
            {[](double) { return 0.0; },
             [&, P_n, Q_n](double t) {
                 return -(swb * m.rho(t) - 0.5 * th(t) * Q_n(t) / P_n(t)) * Q_n(t);
             }},
            0.0, m.T, kSteps);
        add("ode_oracle.phi", sup_err(phi_n, sol.phi), cfg.tol_fd);
        add("ode_oracle.psi", sup_err(psi_n, sol.psi), cfg.tol_fd);
        add("ode_oracle.P", sup_err(P_n, sol.P), cfg.tol_fd);
        add("ode_oracle.Q", sup_err(Q_n, sol.Q), cfg.tol_fd);
        add("ode_oracle.R", sup_err(R_n, sol.R), cfg.tol_fd);
    }

    // Adjoint/value relations and Hamiltonian stationarity on a (t, y) grid
    // and along simulated optimal paths; HJB brackets over the grid.
    {
        const ValueFunction vf = value_function(sol);
        const auto grid = grid_samples(m, 50, 50, -3.0, 3.0);
        const DualityReport g = check_relations(sol, vf, m, grid);
        SimConfig psim;
        psim.n_paths = 100;
        psim.dt = m.T / 1000.0;
        psim.seed = cfg.seed;
        const auto paths = path_samples(m, sol, psim, 100, 10);
        const DualityReport p = check_relations(sol, vf, m, paths);
        add("relations.p", std::max(g.max_p_residual, p.max_p_residual), cfg.tol_id);
        add("relations.q", std::max(g.max_q_residual, p.max_q_residual), cfg.tol_id);
        add("relations.r", std::max(g.max_r_residual, p.max_r_residual), cfg.tol_id);
        add("relations.hamiltonian",
            std::max(g.max_hamiltonian_residual, p.max_hamiltonian_residual), cfg.tol_id);
        add("hjb.c2", g.hjb_coeff_residuals[0], cfg.tol_fd);
        add("hjb.c1", g.hjb_coeff_residuals[1], cfg.tol_fd);
        add("hjb.c0", g.hjb_coeff_residuals[2], cfg.tol_fd);
    }

    // Monte Carlo moment z-tests against the closed forms.
    {
        SimConfig sim;
        sim.n_paths = cfg.check_paths;
        sim.dt = cfg.dt;
        sim.seed = cfg.seed;
        sim.scheme = cfg.scheme;
        const FeedbackPolicy policy = FeedbackPolicy::optimal(m, w, beta);
        const std::vector<double> terminals = run_paths(m, policy, sim);
        const McEstimate est = aggregate(terminals, sim.seed);
        const double cf_mean = mean_terminal_wealth(m, beta, m.T);
        const double cf_m2 = terminal_second_moment(m, beta);
        std::vector<double> squares(terminals.size());
        for (std::size_t i = 0; i < terminals.size(); ++i) squares[i] = terminals[i] * terminals[i];
        const McEstimate est2 = aggregate(squares, sim.seed);
        add("mc.z_mean", std::abs(est.mean - cf_mean) / est.se_mean, cfg.z_max);
        add("mc.z_second_moment", std::abs(est2.mean - cf_m2) / est2.se_mean, cfg.z_max);
    }

    bool all_pass = true;
    for (const CheckRow& r : rows) all_pass = all_pass && r.pass;

    if (as_json) {
        nlohmann::ordered_json j;
        j["config_hash"] = hash_line(cfg).substr(12);
        j["w"] = w;
        j["beta"] = beta;
        j["checks"] = nlohmann::ordered_json::array();
        for (const CheckRow& r : rows) {
            nlohmann::ordered_json e;
            e["name"] = r.name;
            e["value"] = r.value;
            e["limit"] = r.limit;
            e["pass"] = r.pass;
            j["checks"].push_back(std::move(e));
        }
        j["pass"] = all_pass;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << hash_line(cfg) << "\n";
        std::cout << "w=" << sig(w) << " beta=" << sig(beta) << "\n";
        for (const CheckRow& r : rows) {
            std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " value=" << sig(r.value)
                      << " limit=" << sig(r.limit) << "\n";
        }
        std::cout << (all_pass ? "all checks passed" : "CHECK FAILED") << "\n";
    }
    if (!all_pass) {
        for (const CheckRow& r : rows)
            if (!r.pass) std::cerr << "failed: " << r.name << "\n";
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
    if (const char* env = std::getenv("MVJUMP_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
#endif

    CLI::App app{"mean-variance portfolio selection under jump diffusions"};
    app.require_subcommand(1);

    std::string config_path;
    std::string at;
    std::vector<double> times;
    bool dump_model_flag = false;
    bool json_flag = false;
    double tol_both = -1.0;
    double risk_weight_flag = 0.0, target_mean_flag = 0.0;
    bool has_w = false, has_m = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
    };

    CLI::App* solve = app.add_subcommand("solve", "closed-form solution report");
    add_common(solve);
    solve->add_option("--at", at, "print v_hat at \"t,X\"");
    solve->add_option("--times", times, "coefficient tabulation times");
    solve->add_flag("--dump-model", dump_model_flag, "echo the parsed model and exit");
    solve->add_option("--risk-weight", risk_weight_flag, "override objective: risk weight w")
        ->each([&](const std::string&) { has_w = true; });
    solve->add_option("--target-mean", target_mean_flag, "override objective: target mean M")
        ->each([&](const std::string&) { has_m = true; });

    CLI::App* frontier = app.add_subcommand("frontier", "efficient frontier CSV");
    add_common(frontier);
    double mean_min = 0.0, mean_max = 0.0;
    int points = 0;
    std::string out_path;
    frontier->add_option("--mean-min", mean_min, "lowest target mean");
    frontier->add_option("--mean-max", mean_max, "highest target mean");
    frontier->add_option("--points", points, "number of rows");
    frontier->add_option("--out", out_path, "output CSV path (default stdout)");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo report");
    add_common(simulate);
    std::int64_t paths = 0;
    double dt = 0.0;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string scheme, policy, csv_path;
    simulate->add_option("--paths", paths, "number of paths");
    simulate->add_option("--dt", dt, "Euler step");
    simulate->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) { has_seed = true; });
    simulate->add_option("--scheme", scheme, "euler | exact");
    simulate->add_option("--policy", policy, "optimal | zero | constant:<v>");
    simulate->add_option("--csv", csv_path, "dump path_index,terminal_wealth");

    CLI::App* check = app.add_subcommand("check", "run the full residual suite");
    add_common(check);
    double tol_fd = -1.0, tol_id = -1.0, z_max = -1.0;
    std::int64_t check_paths = 0;
    check->add_option("--tol", tol_both, "override both tolerance classes");
    check->add_option("--tol-fd", tol_fd, "finite-difference tolerance");
    check->add_option("--tol-id", tol_id, "identity tolerance");
    check->add_option("--z-max", z_max, "Monte Carlo z-score limit");
    check->add_option("--check-paths", check_paths, "Monte Carlo paths for the z-tests");
    check->add_flag("--json", json_flag, "emit the report as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = load_run_config(config_path);
        if (solve->parsed()) {
            if (!at.empty()) cfg.at = at;
            if (!times.empty()) cfg.times = times;
            if (has_w) cfg.objective = Objective{risk_weight_flag, std::nullopt};
            if (has_m) cfg.objective = Objective{std::nullopt, target_mean_flag};
            return cmd_solve(cfg, dump_model_flag);
        }
        if (frontier->parsed()) {
            if (frontier->count("--mean-min")) cfg.mean_min = mean_min;
            if (frontier->count("--mean-max")) cfg.mean_max = mean_max;
            if (points > 0) cfg.points = points;
            if (!out_path.empty()) cfg.out_path = out_path;
            return cmd_frontier(cfg);
        }
        if (simulate->parsed()) {
            if (paths > 0) cfg.paths = paths;
            if (dt > 0.0) cfg.dt = dt;
            if (has_seed) cfg.seed = seed;
            if (!scheme.empty()) {
                if (scheme == "euler") cfg.scheme = JumpScheme::PoissonCount;
                else if (scheme == "exact") cfg.scheme = JumpScheme::ExactJumpTimes;
                else throw Error(Errc::BadConfig, "scheme must be euler or exact");
            }
            if (!policy.empty()) cfg.policy = policy;
            if (!csv_path.empty()) cfg.csv_path = csv_path;
            return cmd_simulate(cfg);
        }
        if (check->parsed()) {
            if (tol_both > 0.0) {
                cfg.tol_fd = tol_both;
                cfg.tol_id = tol_both;
            }
            if (tol_fd > 0.0) cfg.tol_fd = tol_fd;
            if (tol_id > 0.0) cfg.tol_id = tol_id;
            if (z_max > 0.0) cfg.z_max = z_max;
            if (check_paths > 0) cfg.check_paths = check_paths;
            return cmd_check(cfg, json_flag);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
