#pragma once

#include <cmath>
#include <numbers>

#include "error.hpp"

namespace tdldos {

/// Shape of the switch-on edge of a carrier-driven perturbation.
enum class StepMode {
    Hard,        ///< Heaviside step, 1 at the origin.
    ErfSmoothed, ///< Integral of a Gaussian pump pulse with FWHM tau_pu.
};

/// Step function Θ(t, tau_pu), t measured from the pump arrival [ps].
///
/// ErfSmoothed returns ½[1 + erf(2√(ln2)·t/tau_pu)], the cumulative fluence of a
/// Gaussian pump whose FWHM is tau_pu. A zero width degrades to the Hard step.
inline double step_function(double t, double tau_pu, StepMode mode) {
    if (!(tau_pu >= 0.0)) throw ValidationError("tau_pu", "must be >= 0");
    if (mode == StepMode::Hard || tau_pu == 0.0) return t >= 0.0 ? 1.0 : 0.0;
    const double k = 2.0 * std::sqrt(std::numbers::ln2) / tau_pu;
    return 0.5 * std::erfc(-k * t);
}

inline const char* to_string(StepMode mode) noexcept {
    return mode == StepMode::Hard ? "hard" : "erf";
}

} // namespace tdldos
