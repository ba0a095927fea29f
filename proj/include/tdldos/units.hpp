#pragma once

// Internal unit system: time in ps, decay rates in 1/ns, cavity frequencies in rad/ps.
// SI appears only at the Fermi golden rule boundary (rate_from_ldos).

namespace tdldos::units {

inline constexpr double ps_per_ns = 1000.0;

/// Dimensionless exponent accumulated by a rate [1/ns] acting for a duration [ps].
constexpr double exponent(double rate_per_ns, double duration_ps) noexcept {
    return rate_per_ns * duration_ps / ps_per_ns;
}

constexpr double per_ns_to_per_ps(double rate_per_ns) noexcept { return rate_per_ns / ps_per_ns; }

constexpr double per_s_to_per_ns(double rate_per_s) noexcept { return rate_per_s * 1e-9; }

constexpr double per_ns_to_per_s(double rate_per_ns) noexcept { return rate_per_ns * 1e9; }

// CODATA 2018
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double epsilon0 = 8.8541878128e-12; // F/m

} // namespace tdldos::units
