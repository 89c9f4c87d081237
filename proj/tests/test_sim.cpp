#include <doctest.h>

#include <cmath>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fixtures.hpp"
#include "mvjump/analytic.hpp"
#include "mvjump/errors.hpp"
#include "mvjump/sim.hpp"

using namespace mvjump;

TEST_CASE("zero policy is deterministic and grows at the bond rate") {
    const MarketModel m = fixtures::model_a();
    SimConfig cfg;
    cfg.n_paths = 50;
    cfg.dt = 1e-3;
    const McEstimate est = monte_carlo(m, FeedbackPolicy::zero(), cfg);
    // Euler compounds (1 + rho dt) per step, so the mean carries a first-order
    // bias of about rho^2 T dt / 2 relative to e^{int rho}.
    CHECK(est.mean == doctest::Approx(fixtures::kRiskFreeTerminal).epsilon(3e-6));
    CHECK(est.variance == 0.0);
    CHECK(est.se_mean == 0.0);
    CHECK(est.se_variance == 0.0);
}

TEST_CASE("noise-free constant policy reduces to the deterministic integral") {
    MarketModel m;  // rho = 0, mu = 0.1, sigma = 0, no marks: not validatable, but simulable
    m.T = 1.0;
    m.x0 = 1.0;
    m.rho = Curve::constant(0.0);
    m.mu = Curve::constant(0.1);
    m.sigma = Curve::constant(0.0);
    SimConfig cfg;
    cfg.n_paths = 1;
    cfg.dt = 1e-4;
    const double xT = simulate_path(m, FeedbackPolicy::constant(1.0), cfg, 0);
    CHECK(xT == doctest::Approx(1.1).epsilon(1e-4));
}

TEST_CASE("terminal wealth depends only on (seed, path_index)") {
    const MarketModel m = fixtures::model_a();
    const FeedbackPolicy pol = FeedbackPolicy::optimal(m, 1.0, fixtures::kBetaMeanA);
    SimConfig cfg;
    cfg.n_paths = 64;
    cfg.dt = 1e-2;
    const double one = simulate_path(m, pol, cfg, 17);
    const auto all = run_paths(m, pol, cfg);
    CHECK(one == all[17]);

    SimConfig cfg2 = cfg;
    cfg2.n_paths = 32;  // different batch size, same per-path values
    const auto some = run_paths(m, pol, cfg2);
    CHECK(std::memcmp(some.data(), all.data(), some.size() * sizeof(double)) == 0);
}

TEST_CASE("parallel kernel is bit-identical to the serial reference") {
    const MarketModel m = fixtures::model_a();
    const FeedbackPolicy pol = FeedbackPolicy::optimal(m, 1.0, fixtures::kBetaMeanA);
    for (JumpScheme scheme : {JumpScheme::PoissonCount, JumpScheme::ExactJumpTimes}) {
        SimConfig cfg;
        cfg.n_paths = 500;
        cfg.dt = 1e-2;
        cfg.scheme = scheme;
        const auto serial = run_paths_serial(m, pol, cfg);
#ifdef _OPENMP
        for (int threads : {1, 2, 3}) {
            omp_set_num_threads(threads);
            const auto parallel = run_paths(m, pol, cfg);
            REQUIRE(parallel.size() == serial.size());
            CHECK(std::memcmp(serial.data(), parallel.data(),
                              serial.size() * sizeof(double)) == 0);
        }
        omp_set_num_threads(omp_get_num_procs());
#else
        const auto parallel = run_paths(m, pol, cfg);
        CHECK(std::memcmp(serial.data(), parallel.data(), serial.size() * sizeof(double)) == 0);
#endif
    }
}

TEST_CASE("compensated jumps leave the constant-policy mean unbiased") {
    const MarketModel m = fixtures::model_a();
    SimConfig cfg;
    cfg.n_paths = 20000;
    cfg.dt = 1e-3;
    cfg.seed = 2024;
    const McEstimate est = monte_carlo(m, FeedbackPolicy::constant(1.0), cfg);
    const auto [cf_mean, cf_var] = constant_policy_moments(m, 1.0);
    CHECK(cf_mean == doctest::Approx(fixtures::kMeanConstV1).epsilon(1e-12));
    CHECK(std::abs(est.mean - cf_mean) <= 3.0 * est.se_mean);
    CHECK(std::abs(est.variance - cf_var) <= 4.0 * est.se_variance);
}

TEST_CASE("poisson-count and exact-jump-time schemes agree within noise") {
    const MarketModel m = fixtures::model_a();
    const FeedbackPolicy pol = FeedbackPolicy::optimal(m, 1.0, fixtures::kBetaMeanA);
    SimConfig euler;
    euler.n_paths = 20000;
    euler.dt = 1e-3;
    euler.seed = 31;
    SimConfig exact = euler;
    exact.scheme = JumpScheme::ExactJumpTimes;
    exact.seed = 32;  // independent randomness for an honest two-sample test
    const McEstimate a = monte_carlo(m, pol, euler);
    const McEstimate b = monte_carlo(m, pol, exact);
    const double se_mean = std::hypot(a.se_mean, b.se_mean);
    const double se_var = std::hypot(a.se_variance, b.se_variance);
    CHECK(std::abs(a.mean - b.mean) <= 3.0 * se_mean);
    CHECK(std::abs(a.variance - b.variance) <= 3.0 * se_var);
}

TEST_CASE("exploding path reports its index") {
    MarketModel m = fixtures::model_a();
    m.rho = Curve::constant(1e308);  // compounding overflows within two steps
    SimConfig cfg;
    cfg.n_paths = 3;
    cfg.dt = 1e-2;
    try {
        monte_carlo(m, FeedbackPolicy::zero(), cfg);
        FAIL("expected NonFinite");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonFinite);
        CHECK(std::string(e.what()).find("path 0") != std::string::npos);
    }
}

TEST_CASE("path sampling observes the same trajectory as the terminal run") {
    const MarketModel m = fixtures::model_a();
    const FeedbackPolicy pol = FeedbackPolicy::optimal(m, 1.0, fixtures::kBetaMeanA);
    SimConfig cfg;
    cfg.n_paths = 4;
    cfg.dt = 1e-3;
    const std::vector<double> times{0.0, 0.5, 1.0};
    const auto xs = simulate_path_at(m, pol, cfg, 2, times);
    REQUIRE(xs.size() == 3);
    CHECK(xs[0] == m.x0);
    CHECK(xs[2] == simulate_path(m, pol, cfg, 2));
}

TEST_CASE("aggregate computes textbook moments") {
    const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    const McEstimate est = aggregate(xs, 7);
    CHECK(est.mean == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(est.variance == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    CHECK(est.se_mean == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)).epsilon(1e-15));
    CHECK(est.n_paths == 4);
    CHECK(est.seed == 7);
}

TEST_CASE("config validation") {
    const MarketModel m = fixtures::model_a();
    SimConfig cfg;
    cfg.n_paths = 0;
    CHECK_THROWS_AS(run_paths(m, FeedbackPolicy::zero(), cfg), Error);
    cfg.n_paths = 1;
    cfg.dt = 2.0;  // > T
    CHECK_THROWS_AS(run_paths(m, FeedbackPolicy::zero(), cfg), Error);
    cfg.dt = 0.26;  // rounds to 4 steps
    CHECK(cfg.steps(1.0) == 4);
}
