#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "config.hpp"
#include "dynamics.hpp"
#include "emitter.hpp"
#include "error.hpp"
#include "loss.hpp"
#include "ode.hpp"
#include "rate_models.hpp"
#include "timeseries.hpp"

namespace tdldos {

using RateModel = std::variant<SwitchProfile, CavityTrajectory>;

struct OutputSpec {
    std::vector<std::string> columns; // empty selects every available column
    std::string path;                 // empty writes to stdout from the CLI
};

struct Scenario {
    std::string name = "unnamed";
    std::string description;
    EmitterParams emitter;
    RateModel rate_model;
    PumpProfile pump;
    std::optional<LossModel> loss;
    TimeGrid grid;
    OutputSpec output;

    void validate() const;
};

namespace columns {
inline constexpr std::string_view time = "t_ps";
inline constexpr std::string_view rate = "gamma_rad_per_ns";
inline constexpr std::string_view population = "n2";
inline constexpr std::string_view intensity = "intensity_per_ns";
inline constexpr std::string_view intensity_rel = "intensity_rel";
inline constexpr std::string_view shift = "shift_s";
inline constexpr std::string_view linewidth = "linewidth_factor";
inline constexpr std::string_view intensity_lossy = "intensity_lossy_per_ns";

inline constexpr std::array<std::string_view, 5> base{time, rate, population, intensity, intensity_rel};
inline constexpr std::array<std::string_view, 3> lossy{shift, linewidth, intensity_lossy};
} // namespace columns

// Timing shared by both rate models.
struct SwitchClock {
    double t0pu, tau_sw, tau_pu;
    StepMode step_mode;
};

inline SwitchClock switch_clock(const RateModel& m) {
    return std::visit([](const auto& r) { return SwitchClock{r.t0pu, r.tau_sw, r.tau_pu, r.step_mode}; }, m);
}

/// Rate model evaluated as a callable Γ_rad(t) [1/ns].
inline std::function<double(double)> rate_function(const RateModel& m) {
    if (const auto* p = std::get_if<SwitchProfile>(&m))
        return [p = *p](double t) { return switched_rate(p, t); };
    return [tr = std::get<CavityTrajectory>(m)](double t) { return trajectory_rate(tr, t); };
}

/// Radiative rate before the switch.
inline double baseline_rate(const RateModel& m) {
    if (const auto* p = std::get_if<SwitchProfile>(&m)) return p->gamma0;
    const auto& tr = std::get<CavityTrajectory>(m);
    return lorentzian_rate(tr.cavity, tr.omega_d, tr.cavity.omega_cav0);
}

inline void Scenario::validate() const {
    if (name.empty()) throw ValidationError("scenario.name", "must not be empty");
    for (const std::string* s : {&name, &description, &output.path})
        if (s->find('\n') != std::string::npos) throw ValidationError("scenario", "strings must be single-line");
    emitter.validate();
    std::visit([](const auto& r) { r.validate(); }, rate_model);
    pump.validate();
    if (pump.t0exc != emitter.t0exc) throw ValidationError("pump.t0exc", "must equal emitter.t0exc");
    grid.validate();
    const SwitchClock clock = switch_clock(rate_model);
    if (loss) {
        loss->validate();
        require_shared_clock(clock, *loss);
        if (pump.kind != PumpKind::Delta)
            throw ValidationError("loss", "the lossy intensity model requires a delta pump");
    }
    if (grid.t_start > emitter.t0exc)
        throw ValidationError("grid.t_start_ps", "grid must start at or before the excitation");
    if (grid.t_end < clock.t0pu + 10.0 * clock.tau_sw)
        throw ValidationError("grid.t_end_ps", "grid must extend to t0pu + 10 tau_sw");
    for (const auto& c : output.columns) {
        const bool base = std::find(columns::base.begin(), columns::base.end(), c) != columns::base.end();
        const bool lossy = std::find(columns::lossy.begin(), columns::lossy.end(), c) != columns::lossy.end();
        if (!base && !lossy) throw ValidationError("output.columns", "unknown column '" + c + "'");
        if (lossy && !loss) throw ValidationError("output.columns", "column '" + c + "' needs a [loss] section");
    }
}

// ---------------------------------------------------------------------------
// Scenario documents

namespace detail {

enum class FieldKind { Number, Enum, String, List };

struct Draft {
    Scenario s;
    SwitchProfile sw;
    CavityTrajectory tr;
    LossModel loss;
    std::array<std::optional<double>, 4> loss_timing; // t0pu, tau_sw, tau_pu, step (as 0/1)
};

struct Field {
    std::string_view section;
    std::string_view key;
    FieldKind kind;
    bool required; // within its section
    std::vector<std::string_view> choices;
    std::function<void(Draft&, const std::string&)> set;
};

inline StepMode parse_step(const std::string& v) { return v == "hard" ? StepMode::Hard : StepMode::ErfSmoothed; }

inline PumpKind parse_pump(const std::string& v) {
    if (v == "gaussian") return PumpKind::GaussianPulse;
    if (v == "cw") return PumpKind::ConstantWave;
    return PumpKind::Delta;
}

inline const char* to_string(PumpKind k) {
    switch (k) {
    case PumpKind::GaussianPulse:
        return "gaussian";
    case PumpKind::ConstantWave:
        return "cw";
    case PumpKind::Delta:
        break;
    }
    return "delta";
}

inline std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= v.size()) {
        std::size_t c = v.find(',', start);
        if (c == std::string::npos) c = v.size();
        std::string item = v.substr(start, c - start);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
        start = c + 1;
    }
    return out;
}

#define TDLDOS_NUM(sec, k, req, expr) \
    Field{sec, k, FieldKind::Number, req, {}, [](Draft& d, const std::string& v) { expr = parse_double(v); }}
#define TDLDOS_STEP(sec, expr) \
    Field{sec, "step", FieldKind::Enum, false, {"hard", "erf"}, [](Draft& d, const std::string& v) { expr = parse_step(v); }}

inline const std::vector<Field>& schema() {
    static const std::vector<Field> fields = {
        Field{"scenario", "name", FieldKind::String, false, {}, [](Draft& d, const std::string& v) { d.s.name = v; }},
        Field{"scenario", "description", FieldKind::String, false, {},
              [](Draft& d, const std::string& v) { d.s.description = v; }},

        TDLDOS_NUM("emitter", "n02", false, d.s.emitter.n02),
        TDLDOS_NUM("emitter", "gamma_nrad_per_ns", false, d.s.emitter.gamma_nrad),
        TDLDOS_NUM("emitter", "t0exc_ps", false, d.s.emitter.t0exc),

        TDLDOS_NUM("switch", "gamma0_per_ns", true, d.sw.gamma0),
        TDLDOS_NUM("switch", "dgamma_per_ns", true, d.sw.dgamma),
        TDLDOS_NUM("switch", "t0pu_ps", true, d.sw.t0pu),
        TDLDOS_NUM("switch", "tau_sw_ps", true, d.sw.tau_sw),
        TDLDOS_NUM("switch", "tau_pu_ps", false, d.sw.tau_pu),
        TDLDOS_STEP("switch", d.sw.step_mode),

        TDLDOS_NUM("trajectory", "omega_d_rad_per_ps", true, d.tr.omega_d),
        TDLDOS_NUM("trajectory", "omega_cav0_rad_per_ps", true, d.tr.cavity.omega_cav0),
        TDLDOS_NUM("trajectory", "gamma_cav_rad_per_ps", true, d.tr.cavity.gamma_cav),
        TDLDOS_NUM("trajectory", "gamma_res_per_ns", true, d.tr.cavity.gamma_on_resonance),
        TDLDOS_NUM("trajectory", "gamma_bg_per_ns", false, d.tr.cavity.gamma_background),
        TDLDOS_NUM("trajectory", "delta_omega_max_rad_per_ps", true, d.tr.delta_omega_max),
        TDLDOS_NUM("trajectory", "t0pu_ps", true, d.tr.t0pu),
        TDLDOS_NUM("trajectory", "tau_sw_ps", true, d.tr.tau_sw),
        TDLDOS_NUM("trajectory", "tau_pu_ps", false, d.tr.tau_pu),
        TDLDOS_STEP("trajectory", d.tr.step_mode),

        Field{"pump", "kind", FieldKind::Enum, false, {"delta", "gaussian", "cw"},
              [](Draft& d, const std::string& v) { d.s.pump.kind = parse_pump(v); }},
        TDLDOS_NUM("pump", "amplitude_per_ps", false, d.s.pump.amplitude),
        TDLDOS_NUM("pump", "fwhm_ps", false, d.s.pump.fwhm),
        TDLDOS_NUM("pump", "eta_abs", false, d.s.pump.eta_abs),
        TDLDOS_NUM("pump", "omega_exc_rad_per_s", false, d.s.pump.omega_exc),

        TDLDOS_NUM("loss", "a", true, d.loss.a),
        TDLDOS_NUM("loss", "s0", true, d.loss.s0),
        TDLDOS_NUM("loss", "t0pu_ps", false, d.loss_timing[0]),
        TDLDOS_NUM("loss", "tau_sw_ps", false, d.loss_timing[1]),
        TDLDOS_NUM("loss", "tau_pu_ps", false, d.loss_timing[2]),
        Field{"loss", "step", FieldKind::Enum, false, {"hard", "erf"},
              [](Draft& d, const std::string& v) { d.loss_timing[3] = v == "hard" ? 0.0 : 1.0; }},

        TDLDOS_NUM("grid", "t_start_ps", false, d.s.grid.t_start),
        TDLDOS_NUM("grid", "t_end_ps", false, d.s.grid.t_end),
        TDLDOS_NUM("grid", "dt_ps", false, d.s.grid.output_dt),
        TDLDOS_NUM("grid", "rtol", false, d.s.grid.rtol),
        TDLDOS_NUM("grid", "atol", false, d.s.grid.atol),

        Field{"output", "columns", FieldKind::List, false, {},
              [](Draft& d, const std::string& v) { d.s.output.columns = split_list(v); }},
        Field{"output", "path", FieldKind::String, false, {},
              [](Draft& d, const std::string& v) { d.s.output.path = v; }},
    };
    return fields;
}

#undef TDLDOS_NUM
#undef TDLDOS_STEP

inline const Field* find_field(std::string_view section, std::string_view key) {
    for (const auto& f : schema())
        if (f.section == section && f.key == key) return &f;
    return nullptr;
}

inline bool known_section(std::string_view name) {
    for (const auto& f : schema())
        if (f.section == name) return true;
    return false;
}

} // namespace detail

/// Builds and fully validates a scenario from a parsed document.
inline Scenario scenario_from_document(const ConfigDocument& doc) {
    using namespace detail;
    for (const auto& sec : doc.sections)
        if (!known_section(sec.name)) throw ParseError(sec.line, 2, "unknown section [" + sec.name + "]");

    for (const auto& e : doc.entries)
        if (!find_field(e.section, e.key))
            throw ParseError(e.line, e.key_column, "unknown key '" + e.section + "." + e.key + "'");

    const bool has_switch = doc.has_section("switch");
    const bool has_traj = doc.has_section("trajectory");
    if (has_switch && has_traj) throw ValidationError("rate model", "give either [switch] or [trajectory], not both");

    std::vector<std::string> missing;
    auto collect_missing = [&](std::string_view section) {
        for (const auto& f : schema())
            if (f.section == section && f.required && !doc.find(section, f.key))
                missing.push_back(std::string(section) + "." + std::string(f.key));
    };
    if (has_traj)
        collect_missing("trajectory");
    else
        collect_missing("switch");
    if (doc.has_section("loss")) collect_missing("loss");
    if (!missing.empty()) {
        std::string msg = "missing required fields:";
        for (const auto& m : missing) msg += " " + m;
        if (!has_switch && !has_traj) msg += " (or a complete [trajectory] section)";
        throw ValidationError("scenario", msg);
    }

    Draft d;
    for (const auto& e : doc.entries) {
        const Field* f = find_field(e.section, e.key);
        if (f->kind == FieldKind::Enum &&
            std::find(f->choices.begin(), f->choices.end(), e.value) == f->choices.end()) {
            std::string msg = "invalid value '" + e.value + "' for " + e.section + "." + e.key + " (expected";
            for (auto c : f->choices) msg += " " + std::string(c);
            throw ParseError(e.line, e.value_column, msg + ")");
        }
        try {
            f->set(d, e.value);
        } catch (const ParseError&) {
            throw;
        } catch (const Error&) {
            throw ParseError(e.line, e.value_column,
                             "expected a number for " + e.section + "." + e.key + ", got '" + e.value + "'");
        }
    }

    if (has_traj)
        d.s.rate_model = d.tr;
    else
        d.s.rate_model = d.sw;
    d.s.pump.t0exc = d.s.emitter.t0exc;

    if (doc.has_section("loss")) {
        const SwitchClock c = switch_clock(d.s.rate_model);
        d.loss.t0pu = d.loss_timing[0].value_or(c.t0pu);
        d.loss.tau_sw = d.loss_timing[1].value_or(c.tau_sw);
        d.loss.tau_pu = d.loss_timing[2].value_or(c.tau_pu);
        d.loss.step_mode = d.loss_timing[3] ? (*d.loss_timing[3] == 0.0 ? StepMode::Hard : StepMode::ErfSmoothed)
                                            : c.step_mode;
        d.s.loss = d.loss;
    }
    d.s.validate();
    return d.s;
}

inline Scenario parse_scenario(std::string_view text) { return scenario_from_document(parse_config(text)); }

/// Canonical document for a scenario. Loss timing is omitted: it always follows the switch.
inline std::string to_config(const Scenario& s) {
    std::string out;
    auto section = [&](std::string_view name) {
        if (!out.empty()) out += '\n';
        out += '[';
        out += name;
        out += "]\n";
    };
    auto kv = [&](std::string_view k, const std::string& v) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    };
    auto num = [&](std::string_view k, double v) { kv(k, format_double(v)); };

    section("scenario");
    kv("name", config_quote(s.name));
    if (!s.description.empty()) kv("description", config_quote(s.description));

    section("emitter");
    num("n02", s.emitter.n02);
    num("gamma_nrad_per_ns", s.emitter.gamma_nrad);
    num("t0exc_ps", s.emitter.t0exc);

    if (const auto* p = std::get_if<SwitchProfile>(&s.rate_model)) {
        section("switch");
        num("gamma0_per_ns", p->gamma0);
        num("dgamma_per_ns", p->dgamma);
        num("t0pu_ps", p->t0pu);
        num("tau_sw_ps", p->tau_sw);
        num("tau_pu_ps", p->tau_pu);
        kv("step", to_string(p->step_mode));
    } else {
        const auto& tr = std::get<CavityTrajectory>(s.rate_model);
        section("trajectory");
        num("omega_d_rad_per_ps", tr.omega_d);
        num("omega_cav0_rad_per_ps", tr.cavity.omega_cav0);
        num("gamma_cav_rad_per_ps", tr.cavity.gamma_cav);
        num("gamma_res_per_ns", tr.cavity.gamma_on_resonance);
        num("gamma_bg_per_ns", tr.cavity.gamma_background);
        num("delta_omega_max_rad_per_ps", tr.delta_omega_max);
        num("t0pu_ps", tr.t0pu);
        num("tau_sw_ps", tr.tau_sw);
        num("tau_pu_ps", tr.tau_pu);
        kv("step", to_string(tr.step_mode));
    }

    section("pump");
    kv("kind", detail::to_string(s.pump.kind));
    num("amplitude_per_ps", s.pump.amplitude);
    num("fwhm_ps", s.pump.fwhm);
    num("eta_abs", s.pump.eta_abs);
    num("omega_exc_rad_per_s", s.pump.omega_exc);

    if (s.loss) {
        section("loss");
        num("a", s.loss->a);
        num("s0", s.loss->s0);
    }

    section("grid");
    num("t_start_ps", s.grid.t_start);
    num("t_end_ps", s.grid.t_end);
    num("dt_ps", s.grid.output_dt);
    num("rtol", s.grid.rtol);
    num("atol", s.grid.atol);

    if (!s.output.columns.empty() || !s.output.path.empty()) {
        section("output");
        if (!s.output.columns.empty()) {
            std::string list;
            for (const auto& c : s.output.columns) list += (list.empty() ? "" : ",") + c;
            kv("columns", list);
        }
        if (!s.output.path.empty()) kv("path", config_quote(s.output.path));
    }
    return out;
}

/// FNV-1a over the canonical document, as 16 hex digits.
inline std::string scenario_hash(const Scenario& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : to_config(s)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// Presets

struct Preset {
    std::string_view name;
    std::string_view summary;
    std::string_view text;
};

inline std::span<const Preset> presets() {
    static constexpr Preset list[] = {
        {"fig1_trajectory", "Lorentzian cavity swept from one linewidth detuning onto the emitter",
         R"([scenario]
name = fig1_trajectory
description = "cavity detuned by one linewidth, switched onto resonance"

[trajectory]
omega_d_rad_per_ps = 2400
omega_cav0_rad_per_ps = 2397.6
gamma_cav_rad_per_ps = 2.4
gamma_res_per_ns = 5
gamma_bg_per_ns = 0
delta_omega_max_rad_per_ps = 2.4
t0pu_ps = 150
tau_sw_ps = 35
tau_pu_ps = 0.12
step = hard
)"},
        {"fig2", "switched rate enhanced fivefold at 10 ps", R"([scenario]
name = fig2
description = "rate enhanced by a factor 5 at 10 ps, relaxing with 35 ps"

[switch]
gamma0_per_ns = 1
dgamma_per_ns = 4
t0pu_ps = 10
tau_sw_ps = 35
tau_pu_ps = 0.12
step = erf

[grid]
t_end_ps = 400
)"},
        {"fig2_inhibit", "switched rate inhibited fivefold at 10 ps", R"([scenario]
name = fig2_inhibit
description = "rate inhibited by a factor 5 at 10 ps, relaxing with 35 ps"

[switch]
gamma0_per_ns = 5
dgamma_per_ns = -4
t0pu_ps = 10
tau_sw_ps = 35
tau_pu_ps = 0.12
step = erf

[grid]
t_end_ps = 400
)"},
        {"fig3_enhance", "cavity switched into resonance at 150 ps (photon burst)", R"([scenario]
name = fig3_enhance
description = "gamma0 = 1/ns enhanced by 4/ns at 150 ps"

[switch]
gamma0_per_ns = 1
dgamma_per_ns = 4
t0pu_ps = 150
tau_sw_ps = 35
tau_pu_ps = 0.12
step = hard
)"},
        {"fig3_inhibit", "cavity switched out of resonance at 150 ps (intensity drop)", R"([scenario]
name = fig3_inhibit
description = "gamma0 = 5/ns inhibited by 4/ns at 150 ps"

[switch]
gamma0_per_ns = 5
dgamma_per_ns = -4
t0pu_ps = 150
tau_sw_ps = 35
tau_pu_ps = 0.12
step = hard
)"},
        {"fig4_loss", "burst of fig3_enhance with free-carrier absorption", R"([scenario]
name = fig4_loss
description = "fig3_enhance with free-carrier absorption a = 0.083 and a one-linewidth shift"

[switch]
gamma0_per_ns = 1
dgamma_per_ns = 4
t0pu_ps = 150
tau_sw_ps = 35
tau_pu_ps = 0.12
step = hard

[loss]
a = 0.083
s0 = 1
)"},
    };
    return list;
}

inline const Preset* find_preset(std::string_view name) {
    for (const auto& p : presets())
        if (p.name == name) return &p;
    return nullptr;
}

inline Scenario preset(std::string_view name) {
    const Preset* p = find_preset(name);
    if (!p) throw Error("unknown preset '" + std::string(name) + "'");
    return parse_scenario(p->text);
}

// ---------------------------------------------------------------------------
// Running

enum class SolverPath { Auto, Analytic, Ode };

struct RunOptions {
    SolverPath solver = SolverPath::Auto;
    double loss_rtol = 1e-9;
};

/// True when the closed-form population applies: Hard-step switch profile and delta pump.
inline bool analytic_eligible(const Scenario& s) {
    const auto* p = std::get_if<SwitchProfile>(&s.rate_model);
    return p && p->step_mode == StepMode::Hard && s.pump.kind == PumpKind::Delta;
}

inline TimeSeries run_scenario(const Scenario& s, const RunOptions& opt = {}) {
    try {
        s.validate();
        const std::vector<double> times = s.grid.samples();
        const auto rate = rate_function(s.rate_model);
        const SwitchClock clock = switch_clock(s.rate_model);

        bool analytic = analytic_eligible(s);
        if (opt.solver == SolverPath::Ode) analytic = false;
        if (opt.solver == SolverPath::Analytic && !analytic)
            throw Error("analytic path needs a hard-step [switch] model and a delta pump");

        std::vector<double> n2(times.size(), 0.0);
        if (analytic) {
            const auto& p = std::get<SwitchProfile>(s.rate_model);
            for (std::size_t i = 0; i < times.size(); ++i)
                if (times[i] >= s.emitter.t0exc) n2[i] = population(p, s.emitter, times[i]);
        } else {
            const double breaks[] = {clock.t0pu};
            n2 = solve_rate_equation(rate, s.pump, s.emitter, s.grid, std::span<const double>(breaks)).n2;
        }

        std::vector<double> gamma(times.size());
        std::vector<double> inten(times.size());
        for (std::size_t i = 0; i < times.size(); ++i) {
            gamma[i] = rate(times[i]);
            inten[i] = gamma[i] * n2[i];
        }

        // Delta excitation: normalize to I(t0exc+). Extended pumps: normalize to the peak.
        double norm = 0.0;
        std::string norm_label;
        if (s.pump.kind == PumpKind::Delta) {
            norm = rate(s.emitter.t0exc) * s.emitter.n02;
            norm_label = "I(t)/I(t0exc+)";
        } else {
            norm = *std::max_element(inten.begin(), inten.end());
            norm_label = "I(t)/max(I)";
        }

        std::vector<double> shift, lw, lossy;
        if (s.loss) {
            shift.resize(times.size());
            lw.resize(times.size());
            for (std::size_t i = 0; i < times.size(); ++i) {
                shift[i] = relative_shift(*s.loss, times[i]);
                lw[i] = linewidth_factor(s.loss->a, shift[i]);
            }
            lossy = lossy_intensity_series(rate, baseline_rate(s.rate_model), *s.loss, s.emitter, times,
                                           opt.loss_rtol);
        }

        TimeSeries ts;
        ts.metadata = {
            {"scenario", s.name},
            {"hash", scenario_hash(s)},
            {"rate_model", std::holds_alternative<SwitchProfile>(s.rate_model) ? "switch" : "trajectory"},
            {"step", to_string(clock.step_mode)},
            {"pump", detail::to_string(s.pump.kind)},
            {"solver", analytic ? "analytic" : "ode"},
            {"rtol", format_double(s.grid.rtol)},
            {"atol", format_double(s.grid.atol)},
            {"normalization", norm_label},
            {"units", "t=ps rates=1/ns intensity=photons/ns/emitter n2=normalized"},
        };
        if (s.loss) ts.metadata.emplace_back("loss_rtol", format_double(opt.loss_rtol));

        std::vector<std::string> selected = s.output.columns;
        if (selected.empty()) {
            for (auto c : columns::base) selected.emplace_back(c);
            if (s.loss)
                for (auto c : columns::lossy) selected.emplace_back(c);
        }
        auto column_data = [&](const std::string& c, std::size_t i) -> double {
            if (c == columns::time) return times[i];
            if (c == columns::rate) return gamma[i];
            if (c == columns::population) return n2[i];
            if (c == columns::intensity) return inten[i];
            if (c == columns::intensity_rel) return norm > 0.0 ? inten[i] / norm : 0.0;
            if (c == columns::shift) return shift[i];
            if (c == columns::linewidth) return lw[i];
            return lossy[i];
        };
        ts.columns = selected;
        ts.rows.resize(times.size());
        for (std::size_t i = 0; i < times.size(); ++i) {
            ts.rows[i].reserve(selected.size());
            for (const auto& c : selected) ts.rows[i].push_back(column_data(c, i));
        }
        return ts;
    } catch (const Error& e) {
        throw Error("scenario '" + s.name + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Sweeps

/// Numeric scenario fields addressable as sweep axes ("section.key").
inline std::vector<std::string> sweep_axes() {
    std::vector<std::string> out;
    for (const auto& f : detail::schema())
        if (f.kind == detail::FieldKind::Number) out.push_back(std::string(f.section) + "." + std::string(f.key));
    return out;
}

/// One validated scenario per value, with the axis field replaced.
inline std::vector<Scenario> sweep_scenarios(const Scenario& s, std::string_view axis,
                                             std::span<const double> values) {
    const std::size_t dot = axis.find('.');
    const detail::Field* f =
        dot == std::string_view::npos ? nullptr : detail::find_field(axis.substr(0, dot), axis.substr(dot + 1));
    if (!f || f->kind != detail::FieldKind::Number) throw Error("unknown axis '" + std::string(axis) + "'");
    const ConfigDocument base = parse_config(to_config(s));
    if (!base.has_section(f->section))
        throw Error("axis '" + std::string(axis) + "' refers to a section this scenario does not use");
    std::vector<Scenario> out;
    out.reserve(values.size());
    for (double v : values) {
        ConfigDocument doc = base;
        doc.set(f->section, f->key, format_double(v));
        out.push_back(scenario_from_document(doc));
    }
    return out;
}

/// Runs each sweep point independently (in parallel); results follow the order of values.
inline std::vector<TimeSeries> sweep(const Scenario& s, std::string_view axis, std::span<const double> values,
                                     const RunOptions& opt = {}) {
    const std::vector<Scenario> runs = sweep_scenarios(s, axis, values);
    std::vector<std::future<TimeSeries>> jobs;
    jobs.reserve(runs.size());
    for (const auto& r : runs)
        jobs.push_back(std::async(std::launch::async, [&r, &opt] { return run_scenario(r, opt); }));
    std::vector<TimeSeries> out;
    out.reserve(jobs.size());
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

} // namespace tdldos
