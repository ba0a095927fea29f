// Command-line front end: run presets or scenario files and write CSV time series.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tdldos/scenario.hpp"

namespace fs = std::filesystem;

namespace {

tdldos::Scenario load(const std::string& source) {
    if (fs::is_regular_file(source)) {
        std::ifstream in(source, std::ios::binary);
        std::ostringstream text;
        text << in.rdbuf();
        if (!in) throw tdldos::Error("cannot read '" + source + "'");
        return tdldos::parse_scenario(text.str());
    }
    if (tdldos::find_preset(source)) return tdldos::preset(source);
    throw tdldos::Error("'" + source + "' is neither a readable file nor a preset (see `tdldos presets`)");
}

void apply_tolerances(tdldos::Scenario& s, const CLI::Option* rtol_opt, double rtol,
                      const CLI::Option* atol_opt, double atol) {
    if (*rtol_opt) s.grid.rtol = rtol;
    if (*atol_opt) s.grid.atol = atol;
    s.validate();
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(tdldos::parse_double(item));
    }
    if (out.empty()) throw tdldos::Error("--values needs at least one number");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Emission dynamics of two-level emitters in a time-switched optical cavity"};
    app.require_subcommand(1);

    auto* presets_cmd = app.add_subcommand("presets", "List the built-in scenarios");

    std::string show_name;
    auto* show_cmd = app.add_subcommand("show", "Print a preset as a scenario document");
    show_cmd->add_option("preset", show_name, "Preset name")->required();

    std::string run_source, run_out, solver = "auto";
    double run_rtol = 0, run_atol = 0;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario file or preset and write CSV");
    run_cmd->add_option("scenario", run_source, "Scenario file or preset name")->required();
    run_cmd->add_option("--out,-o", run_out, "Output CSV path (default: [output] path, else stdout)");
    auto* run_rtol_opt = run_cmd->add_option("--rtol", run_rtol, "Relative tolerance of the ODE path");
    auto* run_atol_opt = run_cmd->add_option("--atol", run_atol, "Absolute tolerance of the ODE path");
    run_cmd->add_option("--solver", solver, "Population solver")
        ->check(CLI::IsMember({"auto", "analytic", "ode"}));

    std::string sweep_source, axis, values, out_dir = ".";
    double sweep_rtol = 0, sweep_atol = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario once per value of one parameter");
    sweep_cmd->add_option("scenario", sweep_source, "Scenario file or preset name")->required();
    sweep_cmd->add_option("--axis", axis, "Parameter as section.key, e.g. switch.tau_sw_ps")->required();
    sweep_cmd->add_option("--values", values, "Comma-separated values")->required();
    sweep_cmd->add_option("--out-dir", out_dir, "Directory receiving one CSV per value");
    auto* sweep_rtol_opt = sweep_cmd->add_option("--rtol", sweep_rtol, "Relative tolerance of the ODE path");
    auto* sweep_atol_opt = sweep_cmd->add_option("--atol", sweep_atol, "Absolute tolerance of the ODE path");

    std::string validate_file;
    auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file without running it");
    validate_cmd->add_option("file", validate_file, "Scenario file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*presets_cmd) {
            for (const auto& p : tdldos::presets())
                std::printf("%-16s %s\n", std::string(p.name).c_str(), std::string(p.summary).c_str());
        } else if (*show_cmd) {
            std::cout << tdldos::to_config(tdldos::preset(show_name));
        } else if (*run_cmd) {
            tdldos::Scenario s = load(run_source);
            apply_tolerances(s, run_rtol_opt, run_rtol, run_atol_opt, run_atol);
            tdldos::RunOptions opt;
            if (solver == "analytic") opt.solver = tdldos::SolverPath::Analytic;
            if (solver == "ode") opt.solver = tdldos::SolverPath::Ode;
            const tdldos::TimeSeries ts = tdldos::run_scenario(s, opt);
            const std::string path = run_out.empty() ? s.output.path : run_out;
            if (path.empty() || path == "-") {
                tdldos::write_csv(ts, std::cout);
            } else {
                tdldos::write_csv(ts, fs::path(path));
                std::fprintf(stderr, "wrote %zu rows to %s\n", ts.rows.size(), path.c_str());
            }
        } else if (*sweep_cmd) {
            tdldos::Scenario s = load(sweep_source);
            apply_tolerances(s, sweep_rtol_opt, sweep_rtol, sweep_atol_opt, sweep_atol);
            const std::vector<double> v = parse_values(values);
            const auto series = tdldos::sweep(s, axis, v);
            fs::create_directories(out_dir);
            std::printf("%s,file,peak_intensity_per_ns,final_n2\n", axis.c_str());
            for (std::size_t i = 0; i < v.size(); ++i) {
                const fs::path file =
                    fs::path(out_dir) / (s.name + "__" + axis + "=" + tdldos::format_double(v[i]) + ".csv");
                tdldos::write_csv(series[i], file);
                const auto inten = series[i].column(tdldos::columns::intensity);
                const auto n2 = series[i].column(tdldos::columns::population);
                std::printf("%s,%s,%s,%s\n", tdldos::format_double(v[i]).c_str(), file.string().c_str(),
                            tdldos::format_double(*std::max_element(inten.begin(), inten.end())).c_str(),
                            tdldos::format_double(n2.back()).c_str());
            }
        } else if (*validate_cmd) {
            if (!fs::is_regular_file(validate_file))
                throw tdldos::Error("cannot read '" + validate_file + "'");
            const tdldos::Scenario s = load(validate_file);
            std::printf("ok: %s (%s)\n", s.name.c_str(), tdldos::scenario_hash(s).c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
