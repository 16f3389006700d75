// run_config.hpp - Declarative run description for the dicke command-line driver

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dicke/observables.hpp"
#include "dicke/params.hpp"

namespace dicke::cli {

enum class Command { Spectrum, Softmode, Sweep, Exponent, Thermal, OracleCheck };

const char* to_string(Command c);
std::optional<Command> parse_command(const std::string& name);

struct RunConfig {
    Command command{Command::Exponent};
    ModelParams params{}; // delta_a, kappa, gamma, omega_M; s, y, T, mu come from the axes
    Mode mode{Mode::Photon};

    // sweep axes; y in units of y_c
    std::vector<double> y;
    std::vector<double> s;
    std::vector<double> T;
    std::vector<double> mu;

    FitWindow window{};
    std::size_t points{20};
    bool critical_window{false};

    std::size_t n_modes{2000};
    double omega_max{20.0};
    std::size_t softmode_points{400};

    std::filesystem::path output_dir{"dicke_out"};
    bool emit_svg{false};
    int workers{0};
};

// Raw key -> value text, as read from a config file or collected from flags
using Settings = std::map<std::string, std::string>;

// Plain "key = value" lines plus "# config: key = value" lines (the form embedded
// in every CSV). Other '#' lines and blank lines are ignored. In a file that carries
// embedded config lines, everything else is ignored, so a CSV can be fed back as-is.
Settings parse_settings(const std::string& text);

// Applies settings on top of cfg; unknown keys and malformed values throw InvalidParameter
void apply_settings(RunConfig& cfg, const Settings& settings);

// Fills empty axes with the command's defaults and checks every resulting cell
void resolve(RunConfig& cfg);

// Fully resolved config as ordered "key = value" lines (output location and worker count excluded)
std::vector<std::string> config_lines(const RunConfig& cfg);

// "0.2,0.4" -> {0.2, 0.4}
std::vector<double> parse_list(const std::string& text);

// "a:b:step" -> a, a+step, ..., up to b inclusive, rounded to 12 significant digits.
// Points within the integer exclusion of s = 1 are dropped when drop_s_one is set.
std::vector<double> parse_range(const std::string& text, bool drop_s_one);

} // namespace dicke::cli
