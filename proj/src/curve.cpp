#include "mvjump/curve.hpp"

#include <cmath>

#include "mvjump/errors.hpp"

namespace mvjump {

Curve Curve::constant(double value) {
    if (!std::isfinite(value))
        throw Error(Errc::NonFinite, "constant curve value is not finite");
    Curve c;
    c.value_ = value;
    return c;
}

Curve Curve::sampled(std::vector<double> samples, double horizon) {
    if (samples.size() < 2)
        throw Error(Errc::BadConfig, "sampled curve needs at least 2 points");
    if (!(horizon > 0.0))
        throw Error(Errc::BadHorizon, "sampled curve horizon must be positive");
    for (double v : samples)
        if (!std::isfinite(v))
            throw Error(Errc::NonFinite, "sampled curve contains a non-finite value");
    Curve c;
    c.samples_ = std::move(samples);
    c.horizon_ = horizon;
    return c;
}

double Curve::operator()(double t) const {
    if (samples_.empty()) return value_;
    const std::size_t n = samples_.size();
    const double pos = t / horizon_ * static_cast<double>(n - 1);
    if (pos <= 0.0) return samples_.front();
    if (pos >= static_cast<double>(n - 1)) return samples_.back();
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return samples_[i] + frac * (samples_[i + 1] - samples_[i]);
}

}  // namespace mvjump
