#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdldos/rate_models.hpp"

using namespace tdldos;

namespace {

SwitchProfile enhance(StepMode mode = StepMode::Hard) {
    SwitchProfile p;
    p.gamma0 = 1.0;
    p.dgamma = 4.0;
    p.t0pu = 10.0;
    p.tau_sw = 35.0;
    p.tau_pu = 0.12;
    p.step_mode = mode;
    return p;
}

} // namespace

TEST(StepFunction, HardConvention) {
    EXPECT_EQ(step_function(0.0, 0.12, StepMode::Hard), 1.0);
    EXPECT_EQ(step_function(-1e-300, 0.12, StepMode::Hard), 0.0);
    EXPECT_EQ(step_function(5.0, 0.0, StepMode::Hard), 1.0);
}

TEST(StepFunction, ErfHalfAtOrigin) { EXPECT_EQ(step_function(0.0, 0.12, StepMode::ErfSmoothed), 0.5); }

TEST(StepFunction, ErfOneWidthAfterOrigin) {
    // ½[1 + erf(2√ln2)], reference from the Maclaurin series (30-digit value 0.990734161124400...).
    const double expected = 0.5 * (1.0 + oracle::erf_series(2.0 * std::sqrt(std::numbers::ln2)));
    EXPECT_NEAR(expected, 0.9907341611244005, 1e-14);
    EXPECT_NEAR(step_function(0.12, 0.12, StepMode::ErfSmoothed), expected, 1e-14);
}

TEST(StepFunction, ErfHalfMaximumPointsOfGaussianPump) {
    // The derivative is a Gaussian with FWHM tau_pu: half its peak at ±tau_pu/2.
    const double tau = 0.12, h = 1e-6;
    auto deriv = [&](double t) {
        return (step_function(t + h, tau, StepMode::ErfSmoothed) - step_function(t - h, tau, StepMode::ErfSmoothed)) /
               (2 * h);
    };
    EXPECT_NEAR(deriv(tau / 2) / deriv(0.0), 0.5, 1e-6);
}

TEST(StepFunction, ZeroWidthErfDegradesToHard) {
    EXPECT_EQ(step_function(0.0, 0.0, StepMode::ErfSmoothed), 1.0);
    EXPECT_EQ(step_function(-0.1, 0.0, StepMode::ErfSmoothed), 0.0);
}

TEST(StepFunction, NegativeWidthRejected) { EXPECT_THROW(step_function(0.0, -1.0, StepMode::Hard), ValidationError); }

TEST(StepFunction, MonotoneNonDecreasing) {
    double prev = 0.0;
    for (double t = -1.0; t <= 1.0; t += 0.001) {
        const double v = step_function(t, 0.12, StepMode::ErfSmoothed);
        EXPECT_GE(v, prev);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
        prev = v;
    }
}

TEST(SwitchedRate, PeakIsFivefold) { EXPECT_DOUBLE_EQ(switched_rate(enhance(), 10.0), 5.0); }

TEST(SwitchedRate, BeforeSwitchIsBaseline) {
    for (auto mode : {StepMode::Hard, StepMode::ErfSmoothed}) {
        const auto p = enhance(mode);
        EXPECT_EQ(switched_rate(p, p.t0pu - 100 * p.tau_pu), p.gamma0);
    }
}

TEST(SwitchedRate, OneSwitchTimeLater) { EXPECT_NEAR(switched_rate(enhance(), 45.0), 2.4715177646857693, 1e-15); }

TEST(SwitchedRate, RelaxesToBaseline) { EXPECT_NEAR(switched_rate(enhance(), 1e5), 1.0, 1e-15); }

TEST(SwitchedRate, BoundedByExtremes) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> g0(0.5, 5.0), frac(-0.99, 9.0), tsw(1.0, 100.0), t(-50.0, 500.0);
    for (int i = 0; i < 2000; ++i) {
        SwitchProfile p;
        p.gamma0 = g0(rng);
        p.dgamma = frac(rng) * p.gamma0;
        p.t0pu = 20.0;
        p.tau_sw = tsw(rng);
        p.tau_pu = 0.12;
        p.step_mode = i % 2 ? StepMode::Hard : StepMode::ErfSmoothed;
        const double r = switched_rate(p, t(rng));
        EXPECT_GE(r, std::min(p.gamma0, p.gamma0 + p.dgamma) - 1e-12);
        EXPECT_LE(r, std::max(p.gamma0, p.gamma0 + p.dgamma) + 1e-12);
    }
}

TEST(SwitchedRate, ExcessDecaysByOneOverEPerSwitchTime) {
    for (auto mode : {StepMode::Hard, StepMode::ErfSmoothed}) {
        const auto p = enhance(mode);
        for (double t = p.t0pu + 10 * p.tau_pu; t < 200.0; t += 7.3) {
            const double a = switched_rate(p, t) - p.gamma0;
            const double b = switched_rate(p, t + p.tau_sw) - p.gamma0;
            EXPECT_NEAR(b / a, std::exp(-1.0), 1e-12);
        }
    }
    const auto hard = enhance(StepMode::Hard);
    const auto soft = enhance(StepMode::ErfSmoothed);
    for (double t = hard.t0pu + 10 * hard.tau_pu; t < 300.0; t += 3.1)
        EXPECT_NEAR(switched_rate(soft, t) / switched_rate(hard, t), 1.0, 1e-12);
}

TEST(SwitchProfile, Validation) {
    auto p = enhance();
    EXPECT_NO_THROW(p.validate());
    p.gamma0 = 0.0;
    EXPECT_THROW(p.validate(), ValidationError);
    p = enhance();
    p.dgamma = -1.5;
    EXPECT_THROW(p.validate(), ValidationError);
    p = enhance();
    p.tau_sw = 0.0;
    EXPECT_THROW(p.validate(), ValidationError);
    p = enhance();
    p.tau_pu = 40.0;
    EXPECT_THROW(p.validate(), ValidationError);
}

TEST(Lorentzian, PeakHalfWidthAndOneLinewidth) {
    CavityLorentzian c{100.0, 2.0, 5.0, 0.0};
    EXPECT_DOUBLE_EQ(lorentzian_rate(c, 100.0, 100.0), 5.0);
    EXPECT_DOUBLE_EQ(lorentzian_rate(c, 101.0, 100.0), 2.5);
    EXPECT_DOUBLE_EQ(lorentzian_rate(c, 102.0, 100.0), 1.0);
}

TEST(Lorentzian, EvenAndMaximalAtResonance) {
    CavityLorentzian c{0.0, 1.3, 7.0, 0.4};
    const double peak = lorentzian_rate(c, 0.0, 0.0);
    for (double d = 0.01; d < 10.0; d += 0.37) {
        EXPECT_DOUBLE_EQ(lorentzian_rate(c, d, 0.0), lorentzian_rate(c, -d, 0.0));
        EXPECT_LT(lorentzian_rate(c, d, 0.0), peak);
        EXPECT_GT(lorentzian_rate(c, d, 0.0), c.gamma_background);
    }
}

TEST(Lorentzian, Validation) {
    EXPECT_THROW((CavityLorentzian{0.0, 0.0, 5.0, 0.0}.validate()), ValidationError);
    EXPECT_THROW((CavityLorentzian{0.0, 1.0, 1.0, 1.0}.validate()), ValidationError);
    EXPECT_THROW((CavityLorentzian{0.0, 1.0, 5.0, -0.1}.validate()), ValidationError);
}

namespace {

CavityTrajectory one_linewidth_trajectory() {
    CavityTrajectory tr;
    tr.cavity = {0.0, 2.0, 5.0, 0.0};
    tr.omega_d = 2.0;
    tr.delta_omega_max = 2.0;
    tr.t0pu = 50.0;
    tr.tau_sw = 35.0;
    tr.tau_pu = 0.12;
    tr.step_mode = StepMode::Hard;
    return tr;
}

} // namespace

TEST(Trajectory, UnswitchedLimit) {
    const auto tr = one_linewidth_trajectory();
    EXPECT_EQ(trajectory_rate(tr, 0.0), lorentzian_rate(tr.cavity, tr.omega_d, tr.cavity.omega_cav0));
    EXPECT_DOUBLE_EQ(trajectory_rate(tr, 0.0), 1.0);
}

TEST(Trajectory, ExactResonanceAtSwitch) {
    const auto tr = one_linewidth_trajectory();
    EXPECT_DOUBLE_EQ(trajectory_rate(tr, tr.t0pu), 5.0);
}

TEST(Trajectory, HalfLinewidthAfterLn2SwitchTimes) {
    const auto tr = one_linewidth_trajectory();
    EXPECT_NEAR(trajectory_rate(tr, tr.t0pu + tr.tau_sw * std::numbers::ln2), 2.5, 1e-12);
}

TEST(Trajectory, ReturnsToInitialResonance) {
    const auto tr = one_linewidth_trajectory();
    EXPECT_NEAR(cavity_frequency(tr, 1e5), tr.cavity.omega_cav0, 1e-15);
}

TEST(Trajectory, ZeroTuningIsConstant) {
    auto tr = one_linewidth_trajectory();
    tr.delta_omega_max = 0.0;
    tr.step_mode = StepMode::ErfSmoothed;
    const double r0 = lorentzian_rate(tr.cavity, tr.omega_d, tr.cavity.omega_cav0);
    for (double t = -100.0; t < 500.0; t += 0.77) EXPECT_EQ(trajectory_rate(tr, t), r0);
}

TEST(EffectiveSwitchTime, Examples) {
    EXPECT_DOUBLE_EQ(effective_switch_time(35.0, 1.0, 1.0), 35.0);
    EXPECT_DOUBLE_EQ(effective_switch_time(35.0, 2.0, 1.0), 17.5);
    EXPECT_DOUBLE_EQ(effective_switch_time(10.0, 5.0, 1.0), 2.0);
    EXPECT_DOUBLE_EQ(effective_switch_time(10.0, -5.0, 1.0), 2.0);
    EXPECT_DOUBLE_EQ(effective_switch_time(35.0, 4.8, 2.4), 17.5);
}

TEST(EffectiveSwitchTime, ZeroShiftIsAnError) { EXPECT_THROW(effective_switch_time(35.0, 0.0, 1.0), Error); }

TEST(RateFromLdos, ZeroAndLinearity) {
    const DipoleParams dp{1e-29, 2.4e15};
    EXPECT_EQ(rate_from_ldos(dp, 0.0), 0.0);
    const double r1 = rate_from_ldos(dp, 1e6);
    EXPECT_DOUBLE_EQ(rate_from_ldos(dp, 2e6), 2.0 * r1);
    const DipoleParams dp2{std::sqrt(3.0) * 1e-29, 2.4e15};
    EXPECT_NEAR(rate_from_ldos(dp2, 1e6) / r1, 3.0, 1e-14);
    EXPECT_THROW(rate_from_ldos(dp, -1.0), ValidationError);
}

TEST(RateFromLdos, InvertedByHand) {
    // ρ = Γ ħ ε₀ / (π d² ω) for Γ = 1e9 /s, evaluated with 30-digit arithmetic.
    const double rho = 1238408.0782420771;
    const DipoleParams dp{1e-29, 2.4e15};
    EXPECT_NEAR(rate_from_ldos(dp, rho), 1e9, 1e9 * 1e-14);
    EXPECT_NEAR(units::per_s_to_per_ns(rate_from_ldos(dp, rho)), 1.0, 1e-14);
}
