#include "cli/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "dicke/io.hpp"
#include "dicke/poles.hpp"

namespace dicke::cli {

namespace {

constexpr const char* kEmbedded = "# config:";

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
        throw InvalidParameter("'" + key + "': not a finite number: '" + text + "'");
    return v;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
    const double v = parse_number(key, text);
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e9)
        throw InvalidParameter("'" + key + "': expected a positive integer, got '" + text + "'");
    return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes")
        return true;
    if (t == "false" || t == "0" || t == "no")
        return false;
    throw InvalidParameter("'" + key + "': expected true/false, got '" + text + "'");
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + format_double(v[i]);
    return out;
}

void require(bool ok, const std::string& what) {
    if (!ok)
        throw InvalidParameter(what);
}

} // namespace

const char* to_string(Command c) {
    switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Softmode: return "softmode";
    case Command::Sweep: return "sweep";
    case Command::Exponent: return "exponent";
    case Command::Thermal: return "thermal";
    case Command::OracleCheck: return "oracle-check";
    }
    return "?";
}

std::optional<Command> parse_command(const std::string& name) {
    for (Command c : {Command::Spectrum, Command::Softmode, Command::Sweep, Command::Exponent, Command::Thermal,
                      Command::OracleCheck})
        if (name == to_string(c))
            return c;
    return std::nullopt;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_number("list", item));
    if (out.empty())
        throw InvalidParameter("empty value list");
    return out;
}

std::vector<double> parse_range(const std::string& text, bool drop_s_one) {
    std::stringstream ss(text);
    std::string a, b, step;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, step) )
        throw InvalidParameter("range must look like a:b:step, got '" + text + "'");
    const double lo = parse_number("range", a), hi = parse_number("range", b), d = parse_number("range", step);
    require(d > 0.0 && hi >= lo, "range needs step > 0 and b >= a, got '" + text + "'");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / d + 1e-9)) + 1;
    require(count <= 100000, "range '" + text + "' has too many points");
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", lo + static_cast<double>(i) * d);
        const double v = std::strtod(buf, nullptr);
        if (drop_s_one && std::abs(v - 1.0) < kIntegerExclusion) {
            std::fprintf(stderr, "note: s = %s dropped from the grid (s = 1 is excluded)\n", buf);
            continue;
        }
        out.push_back(v);
    }
    require(!out.empty(), "range '" + text + "' is empty");
    return out;
}

Settings parse_settings(const std::string& text) {
    Settings plain, embedded;
    std::vector<std::string> stray; // lines that are neither comments nor key = value
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string body = trim(line);
        Settings* target = &plain;
        if (body.rfind(kEmbedded, 0) == 0) {
            body = trim(body.substr(std::string(kEmbedded).size()));
            target = &embedded;
        } else if (body.empty() || body[0] == '#') {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            stray.push_back("line " + std::to_string(lineno) + ": '" + body + "'");
            continue;
        }
        (*target)[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
    }
    if (!embedded.empty())
        return embedded;
    if (!stray.empty())
        throw InvalidParameter("config " + stray.front() + " is not 'key = value'");
    return plain;
}

void apply_settings(RunConfig& cfg, const Settings& settings) {
    for (const auto& [key, value] : settings) {
        if (key == "command") {
            const auto c = parse_command(trim(value));
            require(c.has_value(), "unknown command '" + value + "'");
            cfg.command = *c;
        } else if (key == "mode") {
            const std::string m = trim(value);
            require(m == "photon" || m == "atom", "mode must be photon or atom, got '" + value + "'");
            cfg.mode = m == "photon" ? Mode::Photon : Mode::Atom;
        } else if (key == "delta_a") {
            cfg.params.delta_a = parse_number(key, value);
        } else if (key == "kappa") {
            cfg.params.kappa = parse_number(key, value);
        } else if (key == "gamma") {
            cfg.params.bath.gamma = parse_number(key, value);
        } else if (key == "omega_M") {
            cfg.params.bath.omega_M = parse_number(key, value);
        } else if (key == "s") {
            cfg.s = parse_list(value);
        } else if (key == "s_grid") {
            cfg.s = parse_range(value, true);
        } else if (key == "y") {
            cfg.y = parse_list(value);
        } else if (key == "T") {
            cfg.T = parse_list(value);
        } else if (key == "mu") {
            cfg.mu = parse_list(value);
        } else if (key == "eps_min") {
            cfg.window.eps_min = parse_number(key, value);
        } else if (key == "eps_max") {
            cfg.window.eps_max = parse_number(key, value);
        } else if (key == "points") {
            cfg.points = parse_count(key, value);
        } else if (key == "critical_window") {
            cfg.critical_window = parse_bool(key, value);
        } else if (key == "n_modes") {
            cfg.n_modes = parse_count(key, value);
        } else if (key == "omega_max") {
            cfg.omega_max = parse_number(key, value);
        } else if (key == "softmode_points") {
            cfg.softmode_points = parse_count(key, value);
        } else if (key == "svg") {
            cfg.emit_svg = parse_bool(key, value);
        } else if (key == "output_dir") {
            cfg.output_dir = trim(value);
        } else if (key == "workers") {
            cfg.workers = static_cast<int>(parse_count(key, value));
        } else {
            throw InvalidParameter("unknown config key '" + key + "'");
        }
    }
}

void resolve(RunConfig& cfg) {
    auto fill = [](std::vector<double>& axis, std::vector<double> dflt) {
        if (axis.empty())
            axis = std::move(dflt);
    };
    switch (cfg.command) {
    case Command::Spectrum:
        fill(cfg.y, {0.0, 0.5, 0.99});
        fill(cfg.s, {0.8});
        break;
    case Command::Softmode:
        fill(cfg.s, {0.4, 0.8, 1.2});
        break;
    case Command::Sweep:
        fill(cfg.s, {0.8});
        break;
    case Command::Exponent:
        if (cfg.s.empty())
            cfg.s = parse_range("0.2:1.8:0.1", true);
        break;
    case Command::Thermal:
        fill(cfg.s, {0.6});
        fill(cfg.T, {0.5, 1.0, 2.0});
        fill(cfg.mu, {-1e-9});
        break;
    case Command::OracleCheck:
        fill(cfg.s, {0.6, 0.8, 1.2});
        fill(cfg.y, {0.5});
        break;
    }
    fill(cfg.y, {0.0});
    fill(cfg.T, {0.0});
    fill(cfg.mu, {0.0});

    if (cfg.critical_window)
        cfg.window = critical_window(cfg.params);
    require(cfg.window.eps_min > 0.0 && cfg.window.eps_max <= 0.1 && cfg.window.eps_min < cfg.window.eps_max,
            "fit window must satisfy 0 < eps_min < eps_max <= 0.1");
    require(cfg.points >= 8, "fit needs at least 8 points");
    require(cfg.softmode_points >= 8, "soft-mode trace needs at least 8 points");

    for (double y : cfg.y)
        require(y >= 0.0 && y < 1.0, "y must lie in [0, 1) in units of y_c, got " + format_double(y));
    for (double s : cfg.s)
        for (double T : cfg.T)
            for (double mu : cfg.mu) {
                ModelParams p = cfg.params;
                p.bath.s = s;
                p.bath.temperature = T;
                p.bath.mu = mu;
                p.validate();
            }
    if (cfg.command == Command::OracleCheck) {
        require(cfg.n_modes >= 500, "oracle needs n_modes >= 500");
        require(cfg.omega_max >= 2.0 * cfg.params.bath.omega_M, "oracle needs omega_max >= 2 omega_M");
        for (double T : cfg.T)
            require(T == 0.0, "oracle-check is restricted to T = 0");
    }
}

std::vector<std::string> config_lines(const RunConfig& cfg) {
    const ModelParams& p = cfg.params;
    std::vector<std::pair<std::string, std::string>> kv = {
        {"command", to_string(cfg.command)},
        {"mode", to_string(cfg.mode)},
        {"delta_a", format_double(p.delta_a)},
        {"kappa", format_double(p.kappa)},
        {"gamma", format_double(p.bath.gamma)},
        {"omega_M", format_double(p.bath.omega_M)},
        {"s", join(cfg.s)},
        {"y", join(cfg.y)},
        {"T", join(cfg.T)},
        {"mu", join(cfg.mu)},
        {"eps_min", format_double(cfg.window.eps_min)},
        {"eps_max", format_double(cfg.window.eps_max)},
        {"points", std::to_string(cfg.points)},
        {"critical_window", cfg.critical_window ? "true" : "false"},
        {"n_modes", std::to_string(cfg.n_modes)},
        {"omega_max", format_double(cfg.omega_max)},
        {"softmode_points", std::to_string(cfg.softmode_points)},
        {"svg", cfg.emit_svg ? "true" : "false"},
    };
    std::vector<std::string> out;
    for (const auto& [k, v] : kv)
        out.push_back(k + " = " + v);
    return out;
}

} // namespace dicke::cli
