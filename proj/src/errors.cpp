#include "errors.hpp"

namespace bohrwave {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::domain: return "domain";
        case ErrorCode::accuracy: return "accuracy";
        case ErrorCode::overflow: return "overflow";
        case ErrorCode::superluminal: return "superluminal";
        case ErrorCode::unphysical_amplitude: return "unphysical_amplitude";
        case ErrorCode::zero_charge: return "zero_charge";
        case ErrorCode::supercritical_charge: return "supercritical_charge";
        case ErrorCode::evanescent_regime: return "evanescent_regime";
        case ErrorCode::unmatched_parity: return "unmatched_parity";
        case ErrorCode::node_on_orbit: return "node_on_orbit";
        case ErrorCode::undefined_potential: return "undefined_potential";
        case ErrorCode::singularity: return "singularity";
        case ErrorCode::integration_failure: return "integration_failure";
        case ErrorCode::guidance_singularity: return "guidance_singularity";
        case ErrorCode::usage: return "usage";
    }
    return "unknown";
}

}  // namespace bohrwave
