#include "cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "dicke/errors.hpp"
#include "dicke/greens.hpp"
#include "dicke/io.hpp"
#include "dicke/observables.hpp"
#include "dicke/oracle.hpp"
#include "dicke/parallel.hpp"
#include "dicke/poles.hpp"

namespace dicke::cli {

namespace {

std::string short_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct Cell {
    double s;
    double T;
    double mu;
};

std::vector<Cell> cells(const RunConfig& cfg) {
    std::vector<Cell> out;
    for (double s : cfg.s)
        for (double T : cfg.T)
            for (double mu : cfg.mu)
                out.push_back({s, T, mu});
    return out;
}

ModelParams cell_params(const RunConfig& cfg, const Cell& c) {
    ModelParams p = cfg.params;
    p.bath.s = c.s;
    p.bath.temperature = c.T;
    p.bath.mu = c.mu;
    return p;
}

// file-name tag; temperature and chemical potential only when they are not the T = 0 defaults
std::string tag(const Cell& c, bool with_s = true) {
    std::string t = with_s ? "s" + short_num(c.s) : "";
    if (c.T != 0.0 || c.mu != 0.0)
        t += (t.empty() ? "" : "_") + std::string("T") + short_num(c.T) + "_mu" + short_num(c.mu);
    return t.empty() ? "T0" : t;
}

std::string cell_comment(const Cell& c) {
    return "cell: s = " + format_double(c.s) + ", T = " + format_double(c.T) + ", mu = " + format_double(c.mu);
}

CsvTable table_for(const RunConfig& cfg, std::vector<std::string> extra, std::vector<std::string> columns) {
    CsvTable t;
    for (const auto& line : config_lines(cfg))
        t.comments.push_back("config: " + line);
    for (auto& e : extra)
        t.comments.push_back(std::move(e));
    t.columns = std::move(columns);
    return t;
}

class Writer {
public:
    Writer(const RunConfig& cfg, RunResult& result) : cfg_(cfg), result_(result) {}

    void csv(const std::string& name, const CsvTable& t) {
        const auto path = cfg_.output_dir / (name + ".csv");
        write_text_file(path, to_csv(t));
        result_.files.push_back(path);
    }

    void svg(const std::string& name, const PlotSpec& spec, const std::vector<PlotSeries>& series) {
        if (!cfg_.emit_svg)
            return;
        const auto path = cfg_.output_dir / (name + ".svg");
        write_text_file(path, render_svg(spec, series));
        result_.files.push_back(path);
    }

private:
    const RunConfig& cfg_;
    RunResult& result_;
};

void run_spectrum(const RunConfig& cfg, Writer& out) {
    for (const Cell& c : cells(cfg)) {
        const ModelParams base = cell_params(cfg, c);
        const double yc = critical_coupling(base);
        const std::vector<double> grid = spectrum_grid(base);
        CsvTable t = table_for(cfg, {cell_comment(c), "y is in units of y_c"}, {"y", "omega", "c"});
        std::vector<PlotSeries> series;
        for (double y : cfg.y) {
            const Spectrum sp = compute_spectrum(cfg.mode, grid, base.with_y(y * yc), cfg.workers);
            PlotSeries ps{"y = " + short_num(y) + " y_c", {}, {}};
            for (const auto& smp : sp.samples) {
                t.rows.push_back({y, smp.omega, smp.value});
                ps.x.push_back(smp.omega);
                ps.y.push_back(smp.value);
            }
            series.push_back(std::move(ps));
        }
        const std::string name = std::string("spectrum_") + to_string(cfg.mode) + "_" + tag(c);
        out.csv(name, t);
        out.svg(name, {std::string(to_string(cfg.mode)) + " spectrum, " + tag(c), "omega", "C(omega)", false, true},
                series);
    }
}

void run_softmode(const RunConfig& cfg, Writer& out) {
    const std::vector<Cell> cs = cells(cfg);
    const auto branches = parallel_map(
        cs.size(),
        [&](std::size_t i) {
            const ModelParams p = cell_params(cfg, cs[i]);
            const std::vector<double> grid = soft_mode_grid(p, cfg.softmode_points);
            return trace_soft_mode(p, grid);
        },
        cfg.workers);
    std::vector<PlotSeries> series;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const ModelParams p = cell_params(cfg, cs[i]);
        const double yc = critical_coupling(p);
        std::vector<std::string> extra = {cell_comment(cs[i]), "y_c = " + format_double(yc)};
        if (branches[i].bifurcation_y)
            extra.push_back("bifurcation_y = " + format_double(*branches[i].bifurcation_y));
        CsvTable t = table_for(cfg, std::move(extra), {"y", "re_z", "im_z"});
        PlotSeries ps{"s = " + short_num(cs[i].s), {}, {}};
        for (const auto& pt : branches[i].points) {
            t.rows.push_back({pt.y, pt.z.real(), pt.z.imag()});
            ps.x.push_back(pt.z.real());
            ps.y.push_back(pt.z.imag());
        }
        out.csv("softmode_" + tag(cs[i]), t);
        series.push_back(std::move(ps));
    }
    out.svg("softmode", {"soft-mode trajectory", "Re z", "Im z", false, false}, series);
}

void run_sweep(const RunConfig& cfg, Writer& out) {
    const std::vector<Cell> cs = cells(cfg);
    const std::vector<double> eps = geometric_grid(cfg.window.eps_min, cfg.window.eps_max, cfg.points);
    const std::size_t n = eps.size();
    const auto values = parallel_map(
        cs.size() * n,
        [&](std::size_t k) {
            const ModelParams base = cell_params(cfg, cs[k / n]);
            const ModelParams p = base.with_y(critical_coupling(base) * (1.0 - eps[k % n]));
            return std::pair{excitation_number(Mode::Photon, p).n_a, excitation_number(Mode::Atom, p).n_b};
        },
        cfg.workers);
    std::vector<PlotSeries> series;
    for (std::size_t c = 0; c < cs.size(); ++c) {
        CsvTable t = table_for(cfg, {cell_comment(cs[c]), "eps = 1 - y/y_c"}, {"eps", "n_a", "n_b"});
        PlotSeries ps{"n_a, " + tag(cs[c]), {}, {}};
        for (std::size_t i = 0; i < n; ++i) {
            const auto& [na, nb] = values[c * n + i];
            t.rows.push_back({eps[i], na, nb});
            ps.x.push_back(eps[i]);
            ps.y.push_back(na);
        }
        out.csv("sweep_" + tag(cs[c]), t);
        series.push_back(std::move(ps));
    }
    out.svg("sweep", {"excitation number near y_c", "1 - y/y_c", "n_a", true, true}, series);
}

struct ExponentRow {
    double exponent{kNaN};
    double residual{kNaN};
    double halved{kNaN};
    double converged{0.0};
    double ratio{kNaN};
    std::string error;
    bool numerical_failure{false};
};

int run_exponent(const RunConfig& cfg, Writer& out, std::ostream& log) {
    int failures = 0;
    std::vector<Cell> groups; // one curve per (T, mu)
    for (double T : cfg.T)
        for (double mu : cfg.mu)
            groups.push_back({0.0, T, mu});
    std::vector<PlotSeries> series;
    for (const Cell& g : groups) {
        const auto rows = parallel_map(
            cfg.s.size(),
            [&](std::size_t i) {
                ExponentRow r;
                const ModelParams p = cell_params(cfg, {cfg.s[i], g.T, g.mu});
                ExponentOptions opts;
                opts.mode = cfg.mode;
                opts.workers = 1;
                try {
                    const ExponentFit f = fit_critical_exponent(p, cfg.window, cfg.points, opts);
                    r.exponent = f.exponent;
                    r.residual = f.residual;
                    r.halved = f.halved_exponent;
                    r.converged = f.converged ? 1.0 : 0.0;
                    r.ratio = f.n_a.front() / f.n_a.back();
                    if (!f.converged)
                        r.error = "fit not converged (residual " + format_double(f.residual) + ", halved-window shift " +
                                  format_double(f.halved_exponent - f.exponent) + ")";
                } catch (const NotDiverging& e) {
                    r.exponent = 0.0;
                    r.ratio = e.ratio;
                    r.error = e.what();
                } catch (const NumericalError& e) {
                    r.error = e.what();
                    r.numerical_failure = true;
                }
                return r;
            },
            cfg.workers);

        const std::string group = "curve: T = " + format_double(g.T) + ", mu = " + format_double(g.mu);
        CsvTable curve = table_for(cfg, {group}, {"s", "exponent", "residual"});
        CsvTable detail = table_for(cfg, {group, "converged: 1 when residual < 0.05 and halved-window shift < 0.03",
                                          "ratio: n(eps_min)/n(eps_max)"},
                                    {"s", "exponent", "residual", "halved_exponent", "converged", "ratio"});
        PlotSeries ps{"T = " + short_num(g.T) + ", mu = " + short_num(g.mu), {}, {}};
        for (std::size_t i = 0; i < cfg.s.size(); ++i) {
            const ExponentRow& r = rows[i];
            if (!r.error.empty())
                log << "s = " << short_num(cfg.s[i]) << ", T = " << short_num(g.T) << ", mu = " << short_num(g.mu)
                    << ": " << r.error << "\n";
            failures += r.numerical_failure ? 1 : 0;
            curve.rows.push_back({cfg.s[i], r.exponent, r.residual});
            detail.rows.push_back({cfg.s[i], r.exponent, r.residual, r.halved, r.converged, r.ratio});
            if (std::isfinite(r.exponent)) {
                ps.x.push_back(cfg.s[i]);
                ps.y.push_back(r.exponent);
            }
        }
        out.csv("exponent_" + tag(g, false), curve);
        out.csv("exponent_fits_" + tag(g, false), detail);
        series.push_back(std::move(ps));
    }
    out.svg("exponent", {"critical exponent", "s", "exponent", false, false}, series);
    return failures;
}

void run_thermal(const RunConfig& cfg, Writer& out) {
    std::vector<PlotSeries> series;
    for (double s : cfg.s)
        for (double mu : cfg.mu) {
            const auto c_b0 = parallel_map(
                cfg.T.size(),
                [&](std::size_t i) {
                    BathParams b = cfg.params.bath;
                    b.s = s;
                    b.temperature = cfg.T[i];
                    b.mu = mu;
                    return thermal_occupation_b(b);
                },
                cfg.workers);
            CsvTable t = table_for(cfg, {"cell: s = " + format_double(s) + ", mu = " + format_double(mu)}, {"T", "c_b0"});
            PlotSeries ps{"s = " + short_num(s) + ", mu = " + short_num(mu), {}, {}};
            for (std::size_t i = 0; i < cfg.T.size(); ++i) {
                t.rows.push_back({cfg.T[i], c_b0[i]});
                ps.x.push_back(cfg.T[i]);
                ps.y.push_back(c_b0[i]);
            }
            out.csv("thermal_s" + short_num(s) + "_mu" + short_num(mu), t);
            series.push_back(std::move(ps));
        }
    PlotSeries ref{"coth(1/2T)", {}, {}};
    for (double T : cfg.T) {
        ref.x.push_back(T);
        ref.y.push_back(T > 0.0 ? 1.0 / std::tanh(0.5 / T) : 1.0);
    }
    series.push_back(std::move(ref));
    out.svg("thermal", {"atom zero-time correlation", "T", "C_b(t=0)", false, false}, series);
}

int run_oracle_check(const RunConfig& cfg, Writer& out, std::ostream& log) {
    CsvTable t = table_for(cfg, {"y is in units of y_c", "rel_diff = (n_keldysh - n_oracle)/n_oracle"},
                           {"s", "y", "n_keldysh", "n_oracle", "rel_diff"});
    int failures = 0;
    for (double s : cfg.s)
        for (double y : cfg.y) {
            ModelParams p = cell_params(cfg, {s, 0.0, cfg.mu.front()});
            p.y = y * critical_coupling(p);
            double nk = kNaN, no = kNaN;
            try {
                nk = excitation_number(Mode::Photon, p).n_a;
                no = discrete_bath_oracle(p, cfg.n_modes, cfg.omega_max).n_a;
            } catch (const NumericalError& e) {
                log << "s = " << short_num(s) << ", y = " << short_num(y) << " y_c: " << e.what() << "\n";
                ++failures;
            }
            log << "s = " << short_num(s) << ", y = " << short_num(y) << " y_c: keldysh " << format_double(nk)
                << ", oracle " << format_double(no) << "\n";
            t.rows.push_back({s, y, nk, no, (nk - no) / no});
        }
    out.csv("oracle_check", t);
    return failures;
}

} // namespace

RunResult run(const RunConfig& cfg, std::ostream& log) {
    RunResult result;
    Writer out(cfg, result);
    switch (cfg.command) {
    case Command::Spectrum: run_spectrum(cfg, out); break;
    case Command::Softmode: run_softmode(cfg, out); break;
    case Command::Sweep: run_sweep(cfg, out); break;
    case Command::Exponent: result.numerical_failures = run_exponent(cfg, out, log); break;
    case Command::Thermal: run_thermal(cfg, out); break;
    case Command::OracleCheck: result.numerical_failures = run_oracle_check(cfg, out, log); break;
    }
    return result;
}

} // namespace dicke::cli
