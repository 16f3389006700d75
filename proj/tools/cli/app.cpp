#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "dicke/errors.hpp"

namespace dicke::cli {

namespace {

struct Flag {
    const char* name;
    const char* key;
    const char* help;
};

constexpr Flag kValueFlags[] = {
    {"--delta-a", "delta_a", "photon detuning delta_a (units of omega_b)"},
    {"--kappa", "kappa", "photon loss rate"},
    {"--gamma", "gamma", "bath coupling strength"},
    {"--omega-M", "omega_M", "bath cutoff, used by the discretized oracle only"},
    {"--s", "s", "bath exponents, comma separated"},
    {"--s-grid", "s_grid", "bath exponents as a:b:step (s = 1 is skipped)"},
    {"--y", "y", "couplings in units of y_c, comma separated"},
    {"--T", "T", "temperatures, comma separated"},
    {"--mu", "mu", "chemical potentials (<= 0), comma separated"},
    {"--mode", "mode", "photon or atom"},
    {"--eps-min", "eps_min", "fit window lower end, eps = 1 - y/y_c"},
    {"--eps-max", "eps_max", "fit window upper end"},
    {"--points", "points", "points on the fit grid"},
    {"--n-modes", "n_modes", "bath modes in the discretized oracle"},
    {"--omega-max", "omega_max", "largest oracle bath frequency"},
    {"--softmode-points", "softmode_points", "linear points on the soft-mode coupling grid"},
    {"--output-dir", "output_dir", "directory for CSV and SVG files"},
    {"--workers", "workers", "worker threads (default: DICKE_WORKERS or hardware concurrency)"},
};

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw InvalidParameter("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"Driven-dissipative Dicke model with a colored bath: spectra, soft modes, excitation numbers, "
                 "critical exponents"};
    app.name("dicke");
    app.allow_extras(false);

    std::string command;
    std::string config_path;
    bool critical_window = false;
    bool svg = false;
    app.add_option("command", command, "spectrum | softmode | sweep | exponent | thermal | oracle-check (default exponent)");
    app.add_option("--config", config_path, "key = value file; a CSV written by this tool also works");
    std::map<std::string, std::string> flag_values;
    std::vector<std::pair<CLI::Option*, const char*>> options;
    for (const Flag& f : kValueFlags)
        options.emplace_back(app.add_option(f.name, flag_values[f.key], f.help), f.key);
    app.add_flag("--critical-window", critical_window, "fit window |y - y_c| < 1e-4 down to eps = 1e-9");
    app.add_flag("--svg", svg, "also write SVG plots");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty())
            apply_settings(cfg, parse_settings(read_file(config_path)));
        Settings flags;
        for (const auto& [opt, key] : options)
            if (opt->count() > 0)
                flags[key] = flag_values[key];
        if (!command.empty())
            flags["command"] = command;
        if (critical_window)
            flags["critical_window"] = "true";
        if (svg)
            flags["svg"] = "true";
        apply_settings(cfg, flags);
        resolve(cfg);
    } catch (const InvalidParameter& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    }

    try {
        const RunResult r = run(cfg, std::cerr);
        for (const auto& f : r.files)
            std::cout << f.string() << "\n";
        if (r.numerical_failures > 0) {
            std::cerr << r.numerical_failures << " cell(s) failed numerically\n";
            return 3;
        }
    } catch (const InvalidParameter& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace dicke::cli
