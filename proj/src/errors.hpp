#pragma once

#include <stdexcept>
#include <string>

#include "types.hpp"

namespace bohrwave {

enum class ErrorCode {
    invalid_argument = 1,
    domain,
    accuracy,
    overflow,
    superluminal,
    unphysical_amplitude,
    zero_charge,
    supercritical_charge,
    evanescent_regime,
    unmatched_parity,
    node_on_orbit,
    undefined_potential,
    singularity,
    integration_failure,
    guidance_singularity,
    usage,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// A series or iteration did not reach working precision; `partial()` is the
/// best estimate available when it gave up.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, Complex partial)
        : Error(ErrorCode::accuracy, what), partial_(partial) {}
    Complex partial() const noexcept { return partial_; }

private:
    Complex partial_;
};

/// The internal-oscillator amplitude equation has a negative right-hand side.
class UnphysicalAmplitudeError : public Error {
public:
    UnphysicalAmplitudeError(const std::string& what, double min_omega_p)
        : Error(ErrorCode::unphysical_amplitude, what), min_omega_p_(min_omega_p) {}
    /// Smallest internal pulsation for which |z0|^2 >= 0 at this n.
    double min_omega_p() const noexcept { return min_omega_p_; }

private:
    double min_omega_p_;
};

}  // namespace bohrwave
