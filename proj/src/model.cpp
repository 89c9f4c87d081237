#include "mvjump/model.hpp"

#include <cmath>
#include <string>

namespace mvjump {

namespace {

std::string at_time(double t) { return " at t=" + std::to_string(t); }

}  // namespace

const MarketModel& validate_model(const MarketModel& m) {
    if (!(m.T > 0.0) || !std::isfinite(m.T))
        throw Error(Errc::BadHorizon, "horizon T must be positive");
    if (!(m.x0 > 0.0) || !std::isfinite(m.x0))
        throw Error(Errc::BadWealth, "initial wealth x0 must be positive");
    if (m.grid_n < 2)
        throw Error(Errc::BadConfig, "grid_n must be at least 2");
    for (std::size_t k = 0; k < m.marks.size(); ++k) {
        if (!(m.marks[k].intensity > 0.0) || !std::isfinite(m.marks[k].intensity))
            throw Error(Errc::BadIntensity,
                        "mark " + std::to_string(k) + " intensity must be positive");
    }
    for (int i = 0; i <= m.grid_n; ++i) {
        const double t = m.grid_time(i);
        const double r = m.rho(t);
        const double d = m.mu(t);
        if (!(r > 0.0))
            throw Error(Errc::DriftDominance, "rho_t must be positive" + at_time(t));
        if (!(d > r))
            throw Error(Errc::DriftDominance, "mu_t <= rho_t" + at_time(t));
        const double lam = big_lambda(m, t);
        if (!(lam > 0.0) || !std::isfinite(lam))
            throw Error(Errc::DegenerateNoise, "Lambda_t <= 0" + at_time(t));
    }
    return m;
}

double big_lambda(const MarketModel& m, double t) {
    const double s = m.sigma(t);
    double lam = s * s;
    for (const JumpMark& mk : m.marks) {
        const double e = mk.eta(t);
        lam += mk.intensity * e * e;
    }
    return lam;
}

double theta(const MarketModel& m, double t) {
    const double d = m.mu(t) - m.rho(t);
    return d * d / big_lambda(m, t);
}

double integrate(const MarketModel& m, const Curve& f, double a, double b) {
    return integrate(m, [&f](double t) { return f(t); }, a, b);
}

}  // namespace mvjump
