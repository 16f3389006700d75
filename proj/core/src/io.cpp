#include "dicke/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dicke/errors.hpp"

namespace dicke {

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

KeyValues describe(const ModelParams& p) {
    return {{"delta_a", format_double(p.delta_a)},
            {"kappa", format_double(p.kappa)},
            {"y", format_double(p.y)},
            {"s", format_double(p.bath.s)},
            {"gamma", format_double(p.bath.gamma)},
            {"omega_M", format_double(p.bath.omega_M)},
            {"T", format_double(p.bath.temperature)},
            {"mu", format_double(p.bath.mu)}};
}

std::string to_csv(const CsvTable& table) {
    std::string out;
    for (const auto& c : table.comments)
        out += "# " + c + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out += (i ? "," : "") + table.columns[i];
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + format_double(row[i]);
        out += "\n";
    }
    return out;
}

namespace {

std::string params_comment(const ModelParams& p) {
    std::string line = "params:";
    for (const auto& [k, v] : describe(p))
        line += " " + k + "=" + v;
    return line;
}

} // namespace

CsvTable spectrum_table(const Spectrum& s) {
    CsvTable t;
    t.comments.push_back(params_comment(s.params));
    t.comments.push_back(std::string("mode: ") + to_string(s.mode));
    t.columns = {"omega", "value"};
    for (const auto& smp : s.samples)
        t.rows.push_back({smp.omega, smp.value});
    return t;
}

CsvTable branch_table(const SoftModeBranch& b, const ModelParams& p) {
    CsvTable t;
    t.comments.push_back(params_comment(p));
    if (b.bifurcation_y)
        t.comments.push_back("bifurcation_y: " + format_double(*b.bifurcation_y));
    t.columns = {"y", "re_z", "im_z"};
    for (const auto& pt : b.points)
        t.rows.push_back({pt.y, pt.z.real(), pt.z.imag()});
    return t;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f)
        throw std::runtime_error("failed writing " + path.string());
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string esc(const std::string& s) {
    std::string o;
    for (char c : s) {
        switch (c) {
        case '&': o += "&amp;"; break;
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '"': o += "&quot;"; break;
        default: o += c;
        }
    }
    return o;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct Axis {
    double lo, hi;
    bool log;
    double map(double v) const {
        const double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
        return t;
    }
    std::vector<double> ticks() const {
        std::vector<double> t;
        if (log) {
            const int a = static_cast<int>(std::ceil(lo - 1e-9)), b = static_cast<int>(std::floor(hi + 1e-9));
            const int step = std::max(1, (b - a) / 8 + 1);
            for (int k = a; k <= b; k += step)
                t.push_back(std::pow(10.0, k));
        } else {
            const double raw = (hi - lo) / 6.0;
            const double mag = std::pow(10.0, std::floor(std::log10(raw)));
            double step = mag;
            for (double m : {1.0, 2.0, 5.0, 10.0})
                if (m * mag >= raw) {
                    step = m * mag;
                    break;
                }
            for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step)
                t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
        }
        return t;
    }
};

Axis make_axis(const std::vector<PlotSeries>& series, bool use_x, bool log) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& s : series) {
        const auto& v = use_x ? s.x : s.y;
        const auto& w = use_x ? s.y : s.x;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!std::isfinite(v[i]) || !std::isfinite(w[i]))
                continue;
            if (log && !(v[i] > 0.0))
                continue;
            const double t = log ? std::log10(v[i]) : v[i];
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
        lo -= 0.5;
        hi += 0.5;
    }
    if (!log) {
        const double pad = 0.03 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    return {lo, hi, log};
}

} // namespace

std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series) {
    const double W = spec.width, H = spec.height;
    const double ml = 80, mr = 150, mt = 40, mb = 60;
    const double pw = W - ml - mr, ph = H - mt - mb;
    const Axis ax = make_axis(series, true, spec.log_x);
    const Axis ay = make_axis(series, false, spec.log_y);
    auto px = [&](double v) { return ml + ax.map(v) * pw; };
    auto py = [&](double v) { return mt + (1.0 - ay.map(v)) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
       << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << num(ml + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
       << esc(spec.title) << "</text>\n";
    os << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\"" << num(pw) << "\" height=\""
       << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ax.ticks()) {
        const double x = px(t);
        os << "<line x1=\"" << num(x) << "\" y1=\"" << num(mt + ph) << "\" x2=\"" << num(x) << "\" y2=\""
           << num(mt + ph + 5) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << num(x) << "\" y=\"" << num(mt + ph + 20)
           << "\" text-anchor=\"middle\" font-size=\"11\">" << tick_label(t) << "</text>\n";
    }
    for (double t : ay.ticks()) {
        const double y = py(t);
        os << "<line x1=\"" << num(ml - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(ml) << "\" y2=\""
           << num(y) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << num(ml - 8) << "\" y=\"" << num(y + 4)
           << "\" text-anchor=\"end\" font-size=\"11\">" << tick_label(t) << "</text>\n";
    }
    os << "<text x=\"" << num(ml + pw / 2) << "\" y=\"" << num(H - 15)
       << "\" text-anchor=\"middle\" font-size=\"13\">" << esc(spec.x_label) << "</text>\n";
    os << "<text x=\"18\" y=\"" << num(mt + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
       << "transform=\"rotate(-90 18 " << num(mt + ph / 2) << ")\">" << esc(spec.y_label) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
        std::string pts;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                continue;
            if ((spec.log_x && !(s.x[i] > 0.0)) || (spec.log_y && !(s.y[i] > 0.0)))
                continue;
            pts += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
        }
        if (!pts.empty())
            pts.pop_back();
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << pts
           << "\"/>\n";
        const double ly = mt + 16 + 18 * static_cast<double>(si);
        os << "<line x1=\"" << num(ml + pw + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(ml + pw + 36)
           << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << num(ml + pw + 42) << "\" y=\"" << num(ly + 4) << "\" font-size=\"11\">"
           << esc(s.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace dicke
