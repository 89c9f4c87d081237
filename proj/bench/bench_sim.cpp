// Throughput comparison of the OpenMP Monte Carlo kernel against the serial
// reference implementation, on the same workload. Also cross-checks that the
// two produce bit-identical terminal wealth vectors.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mvjump/model.hpp"
#include "mvjump/policy.hpp"
#include "mvjump/sim.hpp"

using namespace mvjump;
using Clock = std::chrono::steady_clock;

namespace {

MarketModel fixture() {
    MarketModel m;
    m.T = 1.0;
    m.x0 = 1.0;
    m.rho = Curve::constant(0.05);
    m.mu = Curve::constant(0.15);
    m.sigma = Curve::constant(0.20);
    m.marks.push_back({Curve::constant(0.10), 1.0});
    return m;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::int64_t n_paths = 100000;
    if (argc > 1) n_paths = std::stoll(argv[1]);

    const MarketModel m = fixture();
    validate_model(m);
    const double beta = 1.8717572303971964;
    const FeedbackPolicy policy = FeedbackPolicy::optimal(m, 1.0, beta);
    SimConfig cfg;
    cfg.n_paths = n_paths;
    cfg.dt = 1e-3;
    cfg.seed = 42;

    // warm-up (page in tables, spin up threads)
    {
        SimConfig small = cfg;
        small.n_paths = 1000;
        run_paths(m, policy, small);
    }

    auto t0 = Clock::now();
    const auto serial = run_paths_serial(m, policy, cfg);
    const double t_serial = seconds_since(t0);

    t0 = Clock::now();
    const auto parallel = run_paths(m, policy, cfg);
    const double t_parallel = seconds_since(t0);

    const bool identical =
        std::memcmp(serial.data(), parallel.data(), serial.size() * sizeof(double)) == 0;

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("paths=%lld steps=%d threads=%d\n", static_cast<long long>(n_paths),
                cfg.steps(m.T), threads);
    std::printf("serial   : %8.3f s  (%.0f paths/s)\n", t_serial, n_paths / t_serial);
    std::printf("parallel : %8.3f s  (%.0f paths/s)  speedup %.2fx\n", t_parallel,
                n_paths / t_parallel, t_serial / t_parallel);
    std::printf("bit-identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
