#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "dynamics.hpp"
#include "emitter.hpp"
#include "error.hpp"
#include "quadrature.hpp"
#include "rate_models.hpp"
#include "step.hpp"
#include "units.hpp"

namespace tdldos {

/**
 * Free-carrier absorption. The cavity linewidth broadens in proportion to the
 * carrier-induced shift S(t) (in unswitched linewidths): γ(t)/γ_i = 1 + a·S(t).
 * The timing fields describe the same carrier population that drives the switch.
 */
struct LossModel {
    double a = 0.083;
    double s0 = 1.0;
    double t0pu = 0.0;
    double tau_sw = 35.0;
    double tau_pu = 0.12;
    StepMode step_mode = StepMode::ErfSmoothed;

    /// Largest shift for which the linear broadening fit holds.
    static constexpr double max_fit_shift = 4.0;

    void validate() const {
        if (!(a >= 0.0) || !std::isfinite(a)) throw ValidationError("a", "must be >= 0");
        if (!(s0 >= 0.0)) throw ValidationError("s0", "must be >= 0");
        if (!(s0 <= max_fit_shift)) throw ValidationError("s0", "must be <= 4 linewidths (fit range)");
        if (!std::isfinite(t0pu)) throw ValidationError("t0pu", "must be finite");
        if (!(tau_sw > 0.0)) throw ValidationError("tau_sw", "must be > 0");
        if (!(tau_pu >= 0.0)) throw ValidationError("tau_pu", "must be >= 0");
    }
};

inline double relative_shift(const LossModel& m, double t) {
    const double u = t - m.t0pu;
    const double on = step_function(u, m.tau_pu, m.step_mode);
    if (on == 0.0) return 0.0;
    return m.s0 * std::exp(-u / m.tau_sw) * on;
}

/// γ/γ_i = 1 + a·s.
inline double linewidth_factor(double a, double s) {
    if (!(a >= 0.0)) throw ValidationError("a", "must be >= 0");
    if (!(s >= 0.0)) throw ValidationError("s", "must be >= 0");
    return 1.0 + a * s;
}

/// Throws unless the loss model runs on the same carrier clock as the switch.
template <class Clock>
void require_shared_clock(const Clock& c, const LossModel& m) {
    if (c.t0pu != m.t0pu || c.tau_sw != m.tau_sw || c.tau_pu != m.tau_pu || c.step_mode != m.step_mode)
        throw ValidationError("loss", "clock mismatch: loss timing must equal the switch timing");
}

/**
 * Lossy intensity on sorted sample times for an arbitrary radiative rate:
 *
 *   I(t) = Γ_rad(t)·(γ_i/γ(t))²·N₀₂·exp[−∫_{t0exc}^{t} (γ_i/γ·Γ_rad + Γ_nrad) dt'].
 *
 * baseline is the unswitched rate; it and Γ_nrad are integrated in closed form and
 * only the switch-coupled remainder γ_i/γ·Γ_rad − baseline goes through quadrature.
 * The cumulative integral is carried from sample to sample within this call.
 */
template <class RateFn>
std::vector<double> lossy_intensity_series(RateFn&& rate_fn, double baseline, const LossModel& m,
                                           const EmitterParams& e, std::span<const double> times,
                                           double tol) {
    m.validate();
    e.validate();
    if (!(tol > 0.0)) throw ValidationError("tol", "must be > 0");
    if (!std::is_sorted(times.begin(), times.end())) throw Error("lossy_intensity: times must be sorted");

    auto remainder = [&](double t) {
        return rate_fn(t) / linewidth_factor(m.a, relative_shift(m, t)) - baseline;
    };
    std::vector<double> splits{m.t0pu};
    if (m.step_mode == StepMode::ErfSmoothed && m.tau_pu > 0.0) {
        splits.push_back(m.t0pu - step_lead_widths * m.tau_pu);
        splits.push_back(m.t0pu + 5.0 * m.tau_pu);
    }
    QuadOptions opt;
    opt.rtol = tol;
    opt.atol = 1e-15;

    std::vector<double> out(times.size(), 0.0);
    double from = e.t0exc;
    double accumulated = 0.0; // ∫ remainder dt' in (1/ns)·ps
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        if (t < e.t0exc) continue;
        accumulated += quad_adaptive(remainder, from, t, std::span<const double>(splits), opt).value;
        from = t;
        const double lw = linewidth_factor(m.a, relative_shift(m, t));
        const double exponent = units::exponent(baseline + e.gamma_nrad, t - e.t0exc) +
                                accumulated / units::ps_per_ns;
        out[i] = rate_fn(t) / (lw * lw) * e.n02 * std::exp(-exponent);
    }
    return out;
}

/// Lossy intensity for a switched-rate profile sharing the loss model's carrier clock.
inline std::vector<double> lossy_intensity_series(const SwitchProfile& p, const LossModel& m,
                                                  const EmitterParams& e,
                                                  std::span<const double> times, double tol = 1e-9) {
    p.validate();
    require_shared_clock(p, m);
    return lossy_intensity_series([&](double t) { return switched_rate(p, t); }, p.gamma0, m, e,
                                  times, tol);
}

inline double lossy_intensity(const SwitchProfile& p, const LossModel& m, const EmitterParams& e,
                              double t, double tol = 1e-9) {
    const double times[] = {t};
    return lossy_intensity_series(p, m, e, std::span<const double>(times), tol).front();
}

} // namespace tdldos
