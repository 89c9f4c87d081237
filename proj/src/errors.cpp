#include "mvjump/errors.hpp"

namespace mvjump {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DriftDominance: return "DriftDominance";
        case Errc::DegenerateNoise: return "DegenerateNoise";
        case Errc::BadIntensity: return "BadIntensity";
        case Errc::BadHorizon: return "BadHorizon";
        case Errc::BadWealth: return "BadWealth";
        case Errc::ReversedLimits: return "ReversedLimits";
        case Errc::NonFinite: return "NonFinite";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::MismatchedSpec: return "MismatchedSpec";
        case Errc::BadConfig: return "BadConfig";
    }
    return "UnknownError";
}

}  // namespace mvjump
