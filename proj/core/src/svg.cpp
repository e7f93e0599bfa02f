#include "heatbounds/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "heatbounds/csv.hpp"

namespace heatbounds::io {

namespace {

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

struct AxisScale {
    bool log = false;
    double lo = 0, hi = 1;

    double map(double v, double pix_lo, double pix_hi) const {
        const double a = log ? std::log10(v) : v;
        const double l = log ? std::log10(lo) : lo;
        const double h = log ? std::log10(hi) : hi;
        const double f = h > l ? (a - l) / (h - l) : 0.5;
        return pix_lo + f * (pix_hi - pix_lo);
    }

    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            const int e_lo = static_cast<int>(std::floor(std::log10(lo)));
            const int e_hi = static_cast<int>(std::ceil(std::log10(hi)));
            for (int e = e_lo; e <= e_hi; ++e) {
                const double v = std::pow(10.0, e);
                if (v >= lo * 0.999 && v <= hi * 1.001) out.push_back(v);
            }
            if (out.size() < 2) out = {lo, hi};
        } else {
            const double span = hi - lo;
            const double raw = span / 5.0;
            const double mag = std::pow(10.0, std::floor(std::log10(raw)));
            double step = mag;
            for (double m : {1.0, 2.0, 5.0, 10.0}) {
                if (raw <= m * mag) { step = m * mag; break; }
            }
            double v = std::ceil(lo / step) * step;
            for (; v <= hi + 1e-12 * span; v += step) out.push_back(v);
        }
        return out;
    }
};

std::string num(double v) { return format_double(v); }

}  // namespace

std::string render_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options) {
    const double ml = 70, mr = 20, mt = options.title.empty() ? 20 : 40, mb = 50;
    const double px_lo = ml, px_hi = options.width - mr;
    const double py_lo = options.height - mb, py_hi = mt;  // y axis points up

    AxisScale xs{options.log_x, std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity()};
    AxisScale ys{options.log_y, std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity()};
    auto usable = [](const AxisScale& s, double v) {
        return std::isfinite(v) && (!s.log || v > 0.0);
    };
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(xs, s.x[i]) || !usable(ys, s.y[i])) continue;
            xs.lo = std::min(xs.lo, s.x[i]);
            xs.hi = std::max(xs.hi, s.x[i]);
            ys.lo = std::min(ys.lo, s.y[i]);
            ys.hi = std::max(ys.hi, s.y[i]);
        }
    }
    if (!(xs.lo <= xs.hi) || !(ys.lo <= ys.hi)) {
        throw std::invalid_argument("plot has no drawable points");
    }
    if (xs.lo == xs.hi) { xs.lo *= 0.9; xs.hi *= 1.1; }
    if (ys.lo == ys.hi) {
        ys.lo = ys.log ? ys.lo * 0.9 : ys.lo - 1;
        ys.hi = ys.log ? ys.hi * 1.1 : ys.hi + 1;
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.width) +
           "\" height=\"" + std::to_string(options.height) + "\" viewBox=\"0 0 " +
           std::to_string(options.width) + " " + std::to_string(options.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        svg += "<text x=\"" + num((px_lo + px_hi) / 2) +
               "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
               options.title + "</text>\n";
    }
    svg += "<line x1=\"" + num(px_lo) + "\" y1=\"" + num(py_lo) + "\" x2=\"" + num(px_hi) +
           "\" y2=\"" + num(py_lo) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(px_lo) + "\" y1=\"" + num(py_lo) + "\" x2=\"" + num(px_lo) +
           "\" y2=\"" + num(py_hi) + "\" stroke=\"black\"/>\n";

    for (double tv : xs.ticks()) {
        const double px = xs.map(tv, px_lo, px_hi);
        svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(py_lo) + "\" x2=\"" + num(px) +
               "\" y2=\"" + num(py_lo + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(px) + "\" y=\"" + num(py_lo + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + num(tv) +
               "</text>\n";
    }
    for (double tv : ys.ticks()) {
        const double py = ys.map(tv, py_lo, py_hi);
        svg += "<line x1=\"" + num(px_lo - 5) + "\" y1=\"" + num(py) + "\" x2=\"" + num(px_lo) +
               "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(px_lo - 8) + "\" y=\"" + num(py + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(tv) +
               "</text>\n";
    }
    svg += "<text x=\"" + num((px_lo + px_hi) / 2) + "\" y=\"" + num(options.height - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           options.x_label + "</text>\n";
    svg += "<text x=\"16\" y=\"" + num((py_lo + py_hi) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 " +
           num((py_lo + py_hi) / 2) + ")\">" + options.y_label + "</text>\n";

    int color = 0;
    double legend_y = py_hi + 14;
    for (const auto& s : series) {
        std::string pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(xs, s.x[i]) || !usable(ys, s.y[i])) continue;
            pts += num(xs.map(s.x[i], px_lo, px_hi)) + "," + num(ys.map(s.y[i], py_lo, py_hi)) + " ";
        }
        const char* c = kColors[color % 5];
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(c) + "\" stroke-width=\"1.5\" points=\"" +
               pts + "\"/>\n";
        if (!s.label.empty()) {
            svg += "<text x=\"" + num(px_hi - 8) + "\" y=\"" + num(legend_y) +
                   "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + c +
                   "\">" + s.label + "</text>\n";
            legend_y += 16;
        }
        ++color;
    }
    svg += "</svg>\n";
    return svg;
}

void write_line_plot(const std::filesystem::path& path, const std::vector<PlotSeries>& series,
                     const PlotOptions& options) {
    write_text_file(path, render_line_plot(series, options));
}

}  // namespace heatbounds::io
