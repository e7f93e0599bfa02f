#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace heatbounds::io {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label = "x";
    std::string y_label = "y";
    bool log_x = false;
    bool log_y = false;
    int width = 800;
    int height = 560;
};

/// Minimal self-contained SVG line plot (axes, ticks, polylines). Points that
/// cannot be represented on a log axis are dropped.
std::string render_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options);

void write_line_plot(const std::filesystem::path& path, const std::vector<PlotSeries>& series,
                     const PlotOptions& options);

}  // namespace heatbounds::io
