#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"
#include "step.hpp"
#include "units.hpp"

namespace tdldos {

/**
 * Phenomenological switched radiative rate
 *
 *   Γ_rad(t) = Γ₀ + ΔΓ·exp(−(t − t0pu)/tau_sw)·Θ(t − t0pu, tau_pu).
 *
 * Rates in 1/ns, times in ps. A negative dgamma describes inhibition.
 */
struct SwitchProfile {
    double gamma0 = 1.0;
    double dgamma = 0.0;
    double t0pu = 0.0;
    double tau_sw = 35.0;
    double tau_pu = 0.12;
    StepMode step_mode = StepMode::ErfSmoothed;

    void validate() const {
        if (!(gamma0 > 0.0)) throw ValidationError("gamma0", "must be > 0");
        if (!std::isfinite(dgamma)) throw ValidationError("dgamma", "must be finite");
        if (!(gamma0 + dgamma >= 0.0))
            throw ValidationError("dgamma", "gamma0 + dgamma must be >= 0");
        if (!std::isfinite(t0pu)) throw ValidationError("t0pu", "must be finite");
        if (!(tau_sw > 0.0) || !std::isfinite(tau_sw)) throw ValidationError("tau_sw", "must be > 0");
        if (!(tau_pu >= 0.0)) throw ValidationError("tau_pu", "must be >= 0");
        if (!(tau_pu < tau_sw)) throw ValidationError("tau_pu", "must be < tau_sw");
    }
};

/// Switch-induced part ΔΓ_rad(t) of the radiative rate [1/ns].
inline double switched_rate_change(const SwitchProfile& p, double t) {
    const double u = t - p.t0pu;
    const double on = step_function(u, p.tau_pu, p.step_mode);
    if (on == 0.0) return 0.0;
    return p.dgamma * std::exp(-u / p.tau_sw) * on;
}

/// Total radiative rate Γ_rad(t) [1/ns].
inline double switched_rate(const SwitchProfile& p, double t) {
    return p.gamma0 + switched_rate_change(p, t);
}

/// Lorentzian cavity LDOS expressed directly as the emitter's radiative rate.
/// gamma_cav is the full width at half maximum.
struct CavityLorentzian {
    double omega_cav0 = 0.0;        // rad/ps
    double gamma_cav = 1.0;         // rad/ps
    double gamma_on_resonance = 5.0; // 1/ns
    double gamma_background = 0.0;  // 1/ns

    void validate() const {
        if (!std::isfinite(omega_cav0)) throw ValidationError("omega_cav0", "must be finite");
        if (!(gamma_cav > 0.0)) throw ValidationError("gamma_cav", "must be > 0");
        if (!(gamma_background >= 0.0))
            throw ValidationError("gamma_background", "must be >= 0");
        if (!(gamma_on_resonance > gamma_background))
            throw ValidationError("gamma_on_resonance", "must exceed gamma_background");
    }
};

inline double lorentzian_rate(const CavityLorentzian& c, double omega_d, double omega_cav) {
    const double hw = 0.5 * c.gamma_cav;
    const double detuning = omega_d - omega_cav;
    return c.gamma_background +
           (c.gamma_on_resonance - c.gamma_background) * hw * hw / (detuning * detuning + hw * hw);
}

/// A cavity whose resonance is pushed up by delta_omega_max at t0pu and relaxes
/// back exponentially, seen by an emitter at omega_d.
struct CavityTrajectory {
    CavityLorentzian cavity;
    double omega_d = 0.0;         // rad/ps
    double delta_omega_max = 0.0; // rad/ps
    double t0pu = 0.0;
    double tau_sw = 35.0;
    double tau_pu = 0.12;
    StepMode step_mode = StepMode::ErfSmoothed;

    void validate() const {
        cavity.validate();
        if (!std::isfinite(omega_d)) throw ValidationError("omega_d", "must be finite");
        if (!std::isfinite(delta_omega_max))
            throw ValidationError("delta_omega_max", "must be finite");
        if (!std::isfinite(t0pu)) throw ValidationError("t0pu", "must be finite");
        if (!(tau_sw > 0.0) || !std::isfinite(tau_sw)) throw ValidationError("tau_sw", "must be > 0");
        if (!(tau_pu >= 0.0)) throw ValidationError("tau_pu", "must be >= 0");
        if (!(tau_pu < tau_sw)) throw ValidationError("tau_pu", "must be < tau_sw");
    }
};

/// Instantaneous cavity resonance ω_cav(t) [rad/ps].
inline double cavity_frequency(const CavityTrajectory& tr, double t) {
    const double u = t - tr.t0pu;
    const double on = step_function(u, tr.tau_pu, tr.step_mode);
    if (on == 0.0) return tr.cavity.omega_cav0;
    return tr.cavity.omega_cav0 + tr.delta_omega_max * std::exp(-u / tr.tau_sw) * on;
}

inline double trajectory_rate(const CavityTrajectory& tr, double t) {
    return lorentzian_rate(tr.cavity, tr.omega_d, cavity_frequency(tr, t));
}

/// Effective switching time τ_sw = Δt·γ_cav/|Δω| for a resonance that is swept by
/// omega_shift within delta_t. Any consistent frequency unit works.
inline double effective_switch_time(double delta_t, double omega_shift, double gamma_cav) {
    if (omega_shift == 0.0 || !std::isfinite(omega_shift))
        throw Error("undefined effective switch time: zero frequency shift");
    return delta_t * gamma_cav / std::abs(omega_shift);
}

/// Transition dipole in SI units.
struct DipoleParams {
    double d = 1e-29;       // C m
    double omega_d = 2.4e15; // rad/s

    void validate() const {
        if (!(d > 0.0)) throw ValidationError("d", "must be > 0");
        if (!(omega_d > 0.0)) throw ValidationError("omega_d", "must be > 0");
    }
};

/// Fermi golden rule with an instantaneous LDOS: Γ = π·d²·ω_d·ρ/(ħ·ε₀).
/// rho in s/m³, result in 1/s (see units::per_s_to_per_ns).
inline double rate_from_ldos(const DipoleParams& dp, double rho) {
    if (!(rho >= 0.0)) throw ValidationError("rho", "must be >= 0");
    return std::numbers::pi * dp.d * dp.d * dp.omega_d * rho / (units::hbar * units::epsilon0);
}

} // namespace tdldos
