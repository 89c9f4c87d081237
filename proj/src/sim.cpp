#include "mvjump/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mvjump/errors.hpp"
#include "mvjump/rng.hpp"

namespace mvjump {

namespace {

// Per-step coefficient tables shared by all paths of one run. Values are
// sampled at the left endpoint of each step; policies are evaluated there
// too (predictable integrands).
struct StepTable {
    int steps = 0;
    double dt = 0.0;
    double sqrt_dt = 0.0;
    std::vector<double> t;        // left endpoints
    std::vector<double> rho;
    std::vector<double> gain;     // mu - rho
    std::vector<double> sigma;
    std::vector<double> disc;     // e^{-int_t^T rho}, optimal policy only
    std::vector<double> ratio;    // (mu - rho) / Lambda, optimal policy only
    std::vector<std::vector<double>> eta;     // [mark][step]
    std::vector<double> lambda_dt;            // [mark]
    std::vector<double> intensity;            // [mark]
    std::vector<double> comp;                 // sum_k lambda_k eta_k(t) dt per step

    FeedbackPolicy::Kind kind = FeedbackPolicy::Kind::Zero;
    double beta = 0.0, shift = 0.0, const_v = 0.0;
};

StepTable build_table(const MarketModel& m, const FeedbackPolicy& policy, const SimConfig& cfg) {
    if (cfg.n_paths < 1) throw Error(Errc::BadConfig, "n_paths must be >= 1");
    if (!(cfg.dt > 0.0) || cfg.dt > m.T)
        throw Error(Errc::BadConfig, "dt must lie in (0, T]");
    StepTable tb;
    tb.steps = cfg.steps(m.T);
    tb.dt = m.T / tb.steps;
    tb.sqrt_dt = std::sqrt(tb.dt);
    tb.kind = policy.kind();
    tb.beta = policy.beta();
    tb.shift = policy.shift();
    tb.const_v = policy.constant_value();
    const auto n = static_cast<std::size_t>(tb.steps);
    tb.t.resize(n);
    tb.rho.resize(n);
    tb.gain.resize(n);
    tb.sigma.resize(n);
    tb.comp.assign(n, 0.0);
    if (tb.kind == FeedbackPolicy::Kind::Optimal) {
        tb.disc.resize(n);
        tb.ratio.resize(n);
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double t = m.T * static_cast<double>(j) / tb.steps;
        tb.t[j] = t;
        tb.rho[j] = m.rho(t);
        tb.gain[j] = m.mu(t) - tb.rho[j];
        tb.sigma[j] = m.sigma(t);
        if (tb.kind == FeedbackPolicy::Kind::Optimal) {
            tb.disc[j] = policy.discount()(t);
            tb.ratio[j] = policy.gain_ratio()(t);
        }
    }
    tb.eta.resize(m.marks.size());
    tb.lambda_dt.resize(m.marks.size());
    tb.intensity.resize(m.marks.size());
    for (std::size_t k = 0; k < m.marks.size(); ++k) {
        tb.intensity[k] = m.marks[k].intensity;
        tb.lambda_dt[k] = m.marks[k].intensity * tb.dt;
        tb.eta[k].resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            tb.eta[k][j] = m.marks[k].eta(tb.t[j]);
            tb.comp[j] += tb.lambda_dt[k] * tb.eta[k][j];
        }
    }
    return tb;
}

inline double policy_value(const StepTable& tb, std::size_t j, double X) {
    switch (tb.kind) {
        case FeedbackPolicy::Kind::Zero: return 0.0;
        case FeedbackPolicy::Kind::Constant: return tb.const_v;
        case FeedbackPolicy::Kind::Optimal:
            return (tb.beta * tb.disc[j] - X) * tb.ratio[j] + tb.shift;
    }
    return 0.0;
}

// Core Euler sweep. Observer is called after construction at t=0 and after
// every step with (step_index_completed, time, X).
template <class Observer>
double run_one_path(const MarketModel& m, const StepTable& tb, std::uint64_t seed,
                    std::int64_t path_index, JumpScheme scheme, Observer&& observe) {
    const PathStream rng(seed, static_cast<std::uint64_t>(path_index));
    const std::size_t n_marks = tb.eta.size();

    // Exact-jump-times state: next arrival and draw ordinal per mark.
    std::vector<double> next_arrival;
    std::vector<std::uint32_t> arrival_draw;
    if (scheme == JumpScheme::ExactJumpTimes && n_marks > 0) {
        next_arrival.resize(n_marks);
        arrival_draw.assign(n_marks, 0);
        for (std::size_t k = 0; k < n_marks; ++k) {
            next_arrival[k] = rng.exponential(tb.intensity[k], PathStream::kArrivalBase + k,
                                              arrival_draw[k]++);
        }
    }

    double X = m.x0;
    observe(0, 0.0, X);
    for (int j = 0; j < tb.steps; ++j) {
        const auto js = static_cast<std::size_t>(j);
        const double v = policy_value(tb, js, X);
        const double z = rng.normal(PathStream::kDiffusion, static_cast<std::uint32_t>(j));
        double dX = (tb.rho[js] * X + tb.gain[js] * v) * tb.dt +
                    tb.sigma[js] * v * tb.sqrt_dt * z;
        if (n_marks > 0) {
            double jump_sum = 0.0;
            if (scheme == JumpScheme::PoissonCount) {
                for (std::size_t k = 0; k < n_marks; ++k) {
                    const std::uint32_t count =
                        rng.poisson(tb.lambda_dt[k], PathStream::kPoissonBase + k,
                                    static_cast<std::uint32_t>(j));
                    if (count != 0) jump_sum += tb.eta[k][js] * count;
                }
            } else {
                const double step_end = m.T * static_cast<double>(j + 1) / tb.steps;
                for (std::size_t k = 0; k < n_marks; ++k) {
                    while (next_arrival[k] <= step_end) {
                        jump_sum += m.marks[k].eta(next_arrival[k]);
                        next_arrival[k] += rng.exponential(
                            tb.intensity[k], PathStream::kArrivalBase + k, arrival_draw[k]++);
                    }
                }
            }
            dX += v * (jump_sum - tb.comp[js]);
        }
        X += dX;
        observe(j + 1, m.T * static_cast<double>(j + 1) / tb.steps, X);
    }
    return X;
}

struct NoObserver {
    void operator()(int, double, double) const {}
};

std::vector<double> run_all(const MarketModel& m, const FeedbackPolicy& policy,
                            const SimConfig& cfg, bool parallel) {
    const StepTable tb = build_table(m, policy, cfg);
    std::vector<double> terminals(static_cast<std::size_t>(cfg.n_paths));
    const std::int64_t n = cfg.n_paths;
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i)
            terminals[static_cast<std::size_t>(i)] =
                run_one_path(m, tb, cfg.seed, i, cfg.scheme, NoObserver{});
    } else {
        for (std::int64_t i = 0; i < n; ++i)
            terminals[static_cast<std::size_t>(i)] =
                run_one_path(m, tb, cfg.seed, i, cfg.scheme, NoObserver{});
    }
    for (std::int64_t i = 0; i < n; ++i) {
        if (!std::isfinite(terminals[static_cast<std::size_t>(i)]))
            throw Error(Errc::NonFinite, "path " + std::to_string(i) + " diverged");
    }
    return terminals;
}

// Fixed-order pairwise summation; deterministic and numerically stable.
double pairwise_sum(std::span<const double> x) {
    if (x.size() <= 32) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    const std::size_t half = x.size() / 2;
    return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

template <class F>
double pairwise_sum_of(std::span<const double> x, F&& f) {
    if (x.size() <= 32) {
        double s = 0.0;
        for (double v : x) s += f(v);
        return s;
    }
    const std::size_t half = x.size() / 2;
    return pairwise_sum_of(x.first(half), f) + pairwise_sum_of(x.subspan(half), f);
}

}  // namespace

int SimConfig::steps(double horizon) const {
    const auto k = static_cast<int>(std::llround(horizon / dt));
    return std::max(k, 1);
}

double simulate_path(const MarketModel& m, const FeedbackPolicy& policy, const SimConfig& cfg,
                     std::int64_t path_index) {
    const StepTable tb = build_table(m, policy, cfg);
    return run_one_path(m, tb, cfg.seed, path_index, cfg.scheme, NoObserver{});
}

std::vector<double> simulate_path_at(const MarketModel& m, const FeedbackPolicy& policy,
                                     const SimConfig& cfg, std::int64_t path_index,
                                     std::span<const double> sample_times) {
    const StepTable tb = build_table(m, policy, cfg);
    // Snap each requested time to a step boundary.
    std::vector<int> target(sample_times.size());
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        const auto j = static_cast<int>(std::llround(sample_times[i] / tb.dt));
        target[i] = std::clamp(j, 0, tb.steps);
    }
    std::vector<double> out(sample_times.size());
    run_one_path(m, tb, cfg.seed, path_index, cfg.scheme,
                 [&](int step, double, double X) {
                     for (std::size_t i = 0; i < target.size(); ++i)
                         if (target[i] == step) out[i] = X;
                 });
    return out;
}

std::vector<double> run_paths(const MarketModel& m, const FeedbackPolicy& policy,
                              const SimConfig& cfg) {
    return run_all(m, policy, cfg, true);
}

std::vector<double> run_paths_serial(const MarketModel& m, const FeedbackPolicy& policy,
                                     const SimConfig& cfg) {
    return run_all(m, policy, cfg, false);
}

McEstimate aggregate(std::span<const double> terminals, std::uint64_t seed) {
    McEstimate est;
    est.n_paths = static_cast<std::int64_t>(terminals.size());
    est.seed = seed;
    if (terminals.empty()) return est;
    const auto n = static_cast<double>(terminals.size());
    est.mean = pairwise_sum(terminals) / n;
    const double mean = est.mean;
    const double m2 = pairwise_sum_of(terminals, [mean](double x) {
                          const double d = x - mean;
                          return d * d;
                      }) / n;
    const double m3 = pairwise_sum_of(terminals, [mean](double x) {
                          const double d = x - mean;
                          return d * d * d;
                      }) / n;
    const double m4 = pairwise_sum_of(terminals, [mean](double x) {
                          const double d = x - mean;
                          return d * d * d * d;
                      }) / n;
    est.variance = (terminals.size() > 1) ? m2 * n / (n - 1.0) : 0.0;
    est.se_mean = std::sqrt(est.variance / n);
    // Var(s^2) ~ (m4 - s^4 (n-3)/(n-1)) / n.
    if (terminals.size() > 1) {
        const double v = (m4 - est.variance * est.variance * (n - 3.0) / (n - 1.0)) / n;
        est.se_variance = std::sqrt(std::max(v, 0.0));
    }
    est.cov_mean_variance = m3 / n;
    return est;
}

McEstimate monte_carlo(const MarketModel& m, const FeedbackPolicy& policy, const SimConfig& cfg) {
    return aggregate(run_paths(m, policy, cfg), cfg.seed);
}

McEstimate monte_carlo_serial(const MarketModel& m, const FeedbackPolicy& policy,
                              const SimConfig& cfg) {
    return aggregate(run_paths_serial(m, policy, cfg), cfg.seed);
}

double objective_se(const McEstimate& est, double w) {
    const double var_j = w * w * est.se_variance * est.se_variance +
                         est.se_mean * est.se_mean -
                         2.0 * w * est.cov_mean_variance;
    return std::sqrt(std::max(var_j, 0.0));
}

}  // namespace mvjump
