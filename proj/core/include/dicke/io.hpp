// io.hpp - CSV serialization with embedded parameters and direct SVG line plots

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "dicke/greens.hpp"
#include "dicke/params.hpp"
#include "dicke/poles.hpp"

namespace dicke {

// %.17g, which round-trips every finite double; "nan"/"inf" otherwise
std::string format_double(double v);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Key/value form of ModelParams in a fixed order
KeyValues describe(const ModelParams& p);

struct CsvTable {
    std::vector<std::string> comments; // written as "# <line>"
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string to_csv(const CsvTable& table);

CsvTable spectrum_table(const Spectrum& s);
CsvTable branch_table(const SoftModeBranch& b, const ModelParams& p);

void write_text_file(const std::filesystem::path& path, const std::string& text);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x{false};
    bool log_y{false};
    int width{720};
    int height{480};
};

// Polyline plot; on log axes non-positive points are dropped
std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series);

} // namespace dicke
