#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "emitter.hpp"
#include "error.hpp"
#include "units.hpp"

namespace tdldos {

enum class PumpKind { Delta, GaussianPulse, ConstantWave };

/**
 * Excitation term η_abs·P_exc(t)/(ħω_exc) of the rate equation.
 *
 * amplitude is the photon flux P/(ħω_exc) per emitter in photons/ps: the peak of a
 * Gaussian pulse or the level of a constant wave switched on at t0exc. A Delta pump
 * is not a source term; the solver turns it into N₂(t0exc) = n02.
 */
struct PumpProfile {
    PumpKind kind = PumpKind::Delta;
    double t0exc = 0.0;     // ps
    double amplitude = 0.0; // photons/ps per emitter
    double fwhm = 0.0;      // ps, Gaussian only
    double eta_abs = 1.0;
    double omega_exc = 0.0; // rad/s, informational (see photon_flux)

    void validate() const {
        if (!std::isfinite(t0exc)) throw ValidationError("t0exc", "must be finite");
        if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
            throw ValidationError("amplitude", "must be >= 0");
        if (kind == PumpKind::GaussianPulse && !(fwhm > 0.0))
            throw ValidationError("fwhm", "must be > 0 for a Gaussian pulse");
        if (!(eta_abs >= 0.0 && eta_abs <= 1.0)) throw ValidationError("eta_abs", "must lie in [0, 1]");
        if (!(omega_exc >= 0.0)) throw ValidationError("omega_exc", "must be >= 0");
    }

    /// Absorbed photons per ps per emitter at time t.
    double source(double t) const {
        switch (kind) {
        case PumpKind::Delta:
            return 0.0;
        case PumpKind::ConstantWave:
            return t >= t0exc ? eta_abs * amplitude : 0.0;
        case PumpKind::GaussianPulse: {
            const double u = (t - t0exc) / fwhm;
            return eta_abs * amplitude * std::exp(-4.0 * std::numbers::ln2 * u * u);
        }
        }
        return 0.0;
    }

    /// Last time at which the source is non-negligible; infinite for a constant wave.
    double support_end() const {
        switch (kind) {
        case PumpKind::Delta:
            return t0exc;
        case PumpKind::GaussianPulse:
            return t0exc + 4.0 * fwhm;
        case PumpKind::ConstantWave:
            return std::numeric_limits<double>::infinity();
        }
        return t0exc;
    }
};

/// Photon flux [photons/ps] carried by an optical power [W] at angular frequency [rad/s].
inline double photon_flux(double power_w, double omega_exc) {
    if (!(omega_exc > 0.0)) throw ValidationError("omega_exc", "must be > 0");
    return power_w / (units::hbar * omega_exc) * 1e-12;
}

/// Output sampling and solver tolerances.
struct TimeGrid {
    double t_start = 0.0;  // ps
    double t_end = 1000.0; // ps
    double output_dt = 0.5;
    double rtol = 1e-9;
    double atol = 1e-12;

    void validate() const {
        if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start))
            throw ValidationError("t_end", "must be > t_start");
        if (!(output_dt > 0.0)) throw ValidationError("output_dt", "must be > 0");
        if (!(rtol > 0.0)) throw ValidationError("rtol", "must be > 0");
        if (!(atol > 0.0)) throw ValidationError("atol", "must be > 0");
    }

    /// Uniform samples t_start + i·output_dt that do not pass t_end.
    std::vector<double> samples() const {
        validate();
        const auto n = static_cast<std::size_t>(std::floor((t_end - t_start) / output_dt + 1e-9));
        std::vector<double> t(n + 1);
        for (std::size_t i = 0; i <= n; ++i) t[i] = t_start + static_cast<double>(i) * output_dt;
        return t;
    }
};

struct OdeSolution {
    std::vector<double> t;
    std::vector<double> n2;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::size_t rhs_evaluations = 0;
};

namespace detail {

// Dormand–Prince 5(4) tableau.
struct DormandPrince {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

} // namespace detail

/**
 * Integrates dN₂/dt = source(t) − (Γ_rad(t) + Γ_nrad)·N₂ on the grid samples.
 *
 * rate_fn(t) returns Γ_rad in 1/ns. The integration is cut into segments at t0exc,
 * at the edges of the pump support and at every entry of breakpoints (switch
 * times). Inside a segment, stages are evaluated no later than nextafter(end, start)
 * so that right-continuous jumps at a breakpoint are seen only by the next segment.
 * Steps are clipped to land on every output sample, so samples carry the RK
 * solution itself rather than an interpolant.
 */
template <class RateFn>
OdeSolution solve_rate_equation(RateFn&& rate_fn, const PumpProfile& pump, const EmitterParams& e,
                                const TimeGrid& g, std::span<const double> breakpoints = {}) {
    using DP = detail::DormandPrince;
    pump.validate();
    e.validate();
    g.validate();
    if (pump.t0exc != e.t0exc) throw ValidationError("t0exc", "pump and emitter disagree");
    if (pump.kind == PumpKind::Delta && e.t0exc < g.t_start)
        throw ValidationError("t_start", "delta excitation must not precede the grid");

    OdeSolution sol;
    sol.t = g.samples();
    sol.n2.assign(sol.t.size(), 0.0);

    std::vector<double> cuts{g.t_start, g.t_end};
    auto add_cut = [&](double c) {
        if (c > g.t_start && c < g.t_end) cuts.push_back(c);
    };
    add_cut(e.t0exc);
    if (pump.kind == PumpKind::GaussianPulse) {
        add_cut(pump.t0exc - 4.0 * pump.fwhm);
        add_cut(pump.support_end());
    }
    for (double b : breakpoints) add_cut(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const double knr = units::per_ns_to_per_ps(e.gamma_nrad);
    double seg_start = 0.0;
    double seg_last = 0.0; // latest admissible stage time inside the segment
    auto rhs = [&](double t, double y) {
        ++sol.rhs_evaluations;
        const double ts = std::clamp(t, seg_start, seg_last);
        const double k = units::per_ns_to_per_ps(rate_fn(ts)) + knr;
        return pump.source(ts) - k * y;
    };

    double y = 0.0;
    double h = std::min(1.0, g.output_dt);
    std::size_t next_sample = 0;
    auto record = [&](double t) {
        while (next_sample < sol.t.size() && sol.t[next_sample] <= t) {
            if (sol.t[next_sample] == t) sol.n2[next_sample] = y;
            ++next_sample;
        }
    };

    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        seg_start = cuts[s];
        const double seg_end = cuts[s + 1];
        seg_last = std::nextafter(seg_end, seg_start);
        double t = seg_start;
        if (pump.kind == PumpKind::Delta && t == e.t0exc) y += e.n02;
        record(t);

        double k1 = rhs(t, y);
        while (t < seg_end) {
            const double stop = (next_sample < sol.t.size() && sol.t[next_sample] < seg_end)
                                    ? sol.t[next_sample]
                                    : seg_end;
            const bool clipped = h >= stop - t;
            const double hs = clipped ? stop - t : h;
            if (hs <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
                throw IntegrationError(t);

            const double k2 = rhs(t + DP::c2 * hs, y + hs * DP::a21 * k1);
            const double k3 = rhs(t + DP::c3 * hs, y + hs * (DP::a31 * k1 + DP::a32 * k2));
            const double k4 =
                rhs(t + DP::c4 * hs, y + hs * (DP::a41 * k1 + DP::a42 * k2 + DP::a43 * k3));
            const double k5 = rhs(t + DP::c5 * hs, y + hs * (DP::a51 * k1 + DP::a52 * k2 +
                                                             DP::a53 * k3 + DP::a54 * k4));
            const double k6 = rhs(t + hs, y + hs * (DP::a61 * k1 + DP::a62 * k2 + DP::a63 * k3 +
                                                    DP::a64 * k4 + DP::a65 * k5));
            const double y5 =
                y + hs * (DP::b1 * k1 + DP::b3 * k3 + DP::b4 * k4 + DP::b5 * k5 + DP::b6 * k6);
            const double k7 = rhs(t + hs, y5);
            const double err_abs = hs * std::abs(DP::e1 * k1 + DP::e3 * k3 + DP::e4 * k4 +
                                                 DP::e5 * k5 + DP::e6 * k6 + DP::e7 * k7);
            const double scale = g.atol + g.rtol * std::max(std::abs(y), std::abs(y5));
            const double err = err_abs / scale;

            if (!std::isfinite(err)) {
                ++sol.rejected_steps;
                h = 0.1 * hs;
                continue;
            }
            const double factor =
                err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            if (err <= 1.0) {
                t = clipped ? stop : t + hs;
                y = y5;
                k1 = k7;
                ++sol.accepted_steps;
                if (t < seg_end) record(t);
                // A clipped step says nothing new about the admissible size.
                if (!clipped) h = hs * factor;
            } else {
                ++sol.rejected_steps;
                h = hs * std::max(factor, 0.1);
            }
        }
    }
    record(g.t_end);
    return sol;
}

template <class RateFn>
OdeSolution solve_rate_equation(RateFn&& rate_fn, const PumpProfile& pump, const EmitterParams& e,
                                const TimeGrid& g, std::initializer_list<double> breakpoints) {
    return solve_rate_equation(std::forward<RateFn>(rate_fn), pump, e, g,
                               std::span<const double>(breakpoints.begin(), breakpoints.size()));
}

} // namespace tdldos
