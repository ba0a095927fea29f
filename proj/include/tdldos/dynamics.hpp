#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "emitter.hpp"
#include "error.hpp"
#include "quadrature.hpp"
#include "rate_models.hpp"
#include "units.hpp"

// Closed-form population and intensity after delta-pulse excitation.

namespace tdldos {

/// Quadrature settings for the smoothed-step switch parameter.
inline constexpr QuadOptions alpha_quadrature{1e-12, 1e-16, 50, 1u << 20};

/// Pump widths before t0pu beyond which the smoothed step is exactly zero in double.
inline constexpr double step_lead_widths = 20.0;

/**
 * Accumulated switch parameter Δα(t) = ∫ ΔΓ_rad(t') dt' up to t (dimensionless).
 *
 * Hard steps use the closed form ΔΓ·τ_sw·(1 − e^{−(t−t0pu)/τ_sw}); smoothed steps
 * integrate ΔΓ_rad numerically, starting where the step has vanished.
 */
inline double alpha_switch(const SwitchProfile& p, double t) {
    if (p.dgamma == 0.0) return 0.0;
    if (p.step_mode == StepMode::Hard || p.tau_pu == 0.0) {
        if (t < p.t0pu) return 0.0;
        return units::exponent(p.dgamma, p.tau_sw) * -std::expm1(-(t - p.t0pu) / p.tau_sw);
    }
    const double lead = p.t0pu - step_lead_widths * p.tau_pu;
    if (t <= lead) return 0.0;
    const double splits[] = {p.t0pu, p.t0pu + 5.0 * p.tau_pu};
    const auto r = quad_adaptive([&](double s) { return switched_rate_change(p, s); }, lead, t,
                                 std::span<const double>(splits), alpha_quadrature);
    return r.value / units::ps_per_ns;
}

/// Long-time limit Δα_∞ = ΔΓ·τ_sw.
inline double alpha_infinity(const SwitchProfile& p) { return units::exponent(p.dgamma, p.tau_sw); }

/**
 * Excited-state population N₂(t) after a delta excitation at e.t0exc:
 *
 *   N₀₂·exp[−(Γ₀ + Γ_nrad)(t − t0exc) − (Δα(t) − Δα(t0exc))].
 *
 * Δα(t0exc) vanishes whenever the switch comes after the excitation.
 */
inline double population(const SwitchProfile& p, const EmitterParams& e, double t) {
    if (t < e.t0exc) throw Error("population requested before excitation (t=" + std::to_string(t) + " ps)");
    const double base = units::exponent(p.gamma0 + e.gamma_nrad, t - e.t0exc);
    const double switched = alpha_switch(p, t) - alpha_switch(p, e.t0exc);
    return e.n02 * std::exp(-base - switched);
}

/// Long-time ratio of switched to unswitched population, e^{−Δα_∞}.
inline double population_ratio_infinity(const SwitchProfile& p) { return std::exp(-alpha_infinity(p)); }

/// Emitted intensity I(t) = Γ_rad(t)·N₂(t) [1/ns]; zero before the excitation.
inline double intensity(const SwitchProfile& p, const EmitterParams& e, double t) {
    if (t < e.t0exc) return 0.0;
    return switched_rate(p, t) * population(p, e, t);
}

struct DynamicsSample {
    double t;          // ps
    double rate;       // 1/ns
    double population; // normalized
    double intensity;  // 1/ns
};

/// Evaluates rate, population and intensity on a list of times.
inline std::vector<DynamicsSample> evaluate_dynamics(const SwitchProfile& p, const EmitterParams& e,
                                                     std::span<const double> times) {
    p.validate();
    e.validate();
    std::vector<DynamicsSample> out;
    out.reserve(times.size());
    for (double t : times) {
        const double rate = switched_rate(p, t);
        const double n2 = t < e.t0exc ? 0.0 : population(p, e, t);
        out.push_back({t, rate, n2, rate * n2});
    }
    return out;
}

} // namespace tdldos
