#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cornplan/common.hpp"

namespace cornplan::kite {

struct Series {
    std::string label;
    std::vector<double> values; // one per axis, 0..100 scale
};

namespace detail {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr int kCanvas = 600;
inline constexpr double kCenter = 300.0;
inline constexpr double kRadius = 250.0; // pixels at index 100

inline const char* palette(size_t i) {
    static const char* kColors[] = {"#1b7837", "#762a83", "#2166ac",
                                    "#b2182b", "#e08214", "#35978f"};
    return kColors[i % 6];
}

inline std::string num(double v) { return text::format_fixed(v, 2); }

/// Axis i points up for i = 0, then clockwise at equal angles.
inline void axis_point(size_t axis, size_t n_axes, double radius, double& x, double& y) {
    double theta = -kPi / 2.0 + 2.0 * kPi * static_cast<double>(axis) /
                                    static_cast<double>(n_axes);
    x = kCenter + radius * std::cos(theta);
    y = kCenter + radius * std::sin(theta);
}

} // namespace detail

/// Renders the sustainability kite diagram: one radial axis per dimension
/// on a 0-100 scale with the index-category rings, one polygon per series.
/// The output is deterministic text; rendering twice gives identical bytes.
inline std::string render_kite_svg(const std::vector<std::string>& axes,
                                   const std::vector<Series>& series) {
    using namespace detail;
    if (axes.empty()) throw ConfigError("kite diagram: no axes");
    for (const auto& s : series)
        if (s.values.size() != axes.size())
            throw ConfigError("kite diagram: series '" + s.label + "' has " +
                              std::to_string(s.values.size()) + " values for " +
                              std::to_string(axes.size()) + " axes");

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
           "viewBox=\"0 0 600 600\">\n";
    svg += "<rect width=\"600\" height=\"600\" fill=\"#ffffff\"/>\n";

    static const struct {
        double value;
        const char* label;
    } kRings[] = {{25.0, "Not Sustainable"},
                  {50.0, "Less Sustainable"},
                  {75.0, "Quite Sustainable"},
                  {100.0, "Very Sustainable"}};
    for (const auto& ring : kRings) {
        double r = kRadius * ring.value / 100.0;
        svg += "<circle cx=\"" + num(kCenter) + "\" cy=\"" + num(kCenter) + "\" r=\"" +
               num(r) + "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + num(kCenter + 4.0) + "\" y=\"" + num(kCenter - r + 12.0) +
               "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#999999\">" +
               std::string(ring.label) + " (" + num(ring.value) + ")</text>\n";
    }

    for (size_t a = 0; a < axes.size(); ++a) {
        double x = 0, y = 0;
        axis_point(a, axes.size(), kRadius, x, y);
        svg += "<line x1=\"" + num(kCenter) + "\" y1=\"" + num(kCenter) + "\" x2=\"" +
               num(x) + "\" y2=\"" + num(y) +
               "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
        double lx = 0, ly = 0;
        axis_point(a, axes.size(), kRadius + 18.0, lx, ly);
        svg += "<text x=\"" + num(lx) + "\" y=\"" + num(ly) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
               axes[a] + "</text>\n";
    }

    for (size_t s = 0; s < series.size(); ++s) {
        const char* color = palette(s);
        std::string points;
        for (size_t a = 0; a < axes.size(); ++a) {
            double v = std::min(100.0, std::max(0.0, series[s].values[a]));
            double x = 0, y = 0;
            axis_point(a, axes.size(), kRadius * v / 100.0, x, y);
            if (a > 0) points += ' ';
            points += num(x) + "," + num(y);
        }
        svg += "<polygon points=\"" + points + "\" fill=\"" + color +
               "\" fill-opacity=\"0.15\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        for (size_t a = 0; a < axes.size(); ++a) {
            double v = std::min(100.0, std::max(0.0, series[s].values[a]));
            double x = 0, y = 0;
            axis_point(a, axes.size(), kRadius * v / 100.0, x, y);
            svg += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"3\" fill=\"" +
                   color + "\"/>\n";
        }
    }

    double legend_y = 580.0 - 16.0 * static_cast<double>(series.size());
    for (size_t s = 0; s < series.size(); ++s) {
        const char* color = palette(s);
        double y = legend_y + 16.0 * static_cast<double>(s);
        svg += "<rect x=\"10\" y=\"" + num(y - 9.0) +
               "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
        std::string values;
        for (size_t a = 0; a < axes.size(); ++a) {
            if (a > 0) values += ", ";
            values += num(series[s].values[a]);
        }
        svg += "<text x=\"26\" y=\"" + num(y) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + series[s].label + ": " +
               values + "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace cornplan::kite
