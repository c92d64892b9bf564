// Copyright (c) 2026, zo-bench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Static SVG convergence plot: log10 optimality gap against iteration, one
// polyline per optimizer.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zo/errors.hpp"
#include "zo/harness/execute.hpp"
#include "zo/harness/trace_io.hpp"

namespace zo::harness {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points; ///< (iteration, gap)
};

namespace detail {

inline constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                           "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

inline std::string fixed(double x) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << x;
    return os.str();
}

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace detail

/// Renders the plot. Gaps are floored at kGapFloor before the logarithm.
inline std::string render_svg(const std::vector<PlotSeries>& series, const std::string& title = "") {
    if (series.empty()) throw ArgumentError("plot: no traces");
    for (const auto& s : series)
        if (s.points.empty()) throw ArgumentError("plot: series '" + s.label + "' is empty");

    constexpr double width = 720, height = 480;
    constexpr double left = 70, right = 170, top = 40, bottom = 50;
    const double plot_w = width - left - right, plot_h = height - top - bottom;

    double x_min = INFINITY, x_max = -INFINITY, y_min = INFINITY, y_max = -INFINITY;
    for (const auto& s : series) {
        for (const auto& [x, gap] : s.points) {
            const double y = std::log10(std::max(gap, kGapFloor));
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    y_min = std::floor(y_min);
    y_max = std::ceil(y_max);
    if (y_max == y_min) {
        y_min -= 1.0;
        y_max += 1.0;
    }
    auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return top + (y_max - y) / (y_max - y_min) * plot_h; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
        os << "<text x=\"" << left + plot_w / 2 << "\" y=\"24\" text-anchor=\"middle\">" << detail::xml_escape(title)
           << "</text>\n";

    // Axes, decade gridlines and labels.
    os << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h << "\"/>\n";
    os << "</g>\n<g class=\"ticks\">\n";
    const int decade_step = std::max(1, static_cast<int>(std::ceil((y_max - y_min) / 10.0)));
    for (int e = static_cast<int>(y_min); e <= static_cast<int>(y_max); e += decade_step) {
        const double y = py(e);
        os << "<line x1=\"" << left << "\" y1=\"" << detail::fixed(y) << "\" x2=\"" << left + plot_w << "\" y2=\""
           << detail::fixed(y) << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << detail::fixed(y + 4) << "\" text-anchor=\"end\">1e" << e
           << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const double xv = x_min + (x_max - x_min) * i / 4.0;
        os << "<text x=\"" << detail::fixed(px(xv)) << "\" y=\"" << top + plot_h + 18
           << "\" text-anchor=\"middle\">" << static_cast<long long>(std::llround(xv)) << "</text>\n";
    }
    os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">iteration</text>\n";
    os << "<text transform=\"translate(18," << top + plot_h / 2
       << ") rotate(-90)\" text-anchor=\"middle\">optimality gap (log scale)</text>\n";
    os << "</g>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = detail::kPalette[s % std::size(detail::kPalette)];
        os << "<polyline class=\"series\" data-label=\"" << detail::xml_escape(series[s].label)
           << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[s].points.size(); ++i) {
            const auto& [x, gap] = series[s].points[i];
            if (i) os << ' ';
            os << detail::fixed(px(x)) << ',' << detail::fixed(py(std::log10(std::max(gap, kGapFloor))));
        }
        os << "\"/>\n";
    }

    os << "<g class=\"legend\">\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const double y = top + 16 + 20.0 * static_cast<double>(s);
        const double x = left + plot_w + 15;
        os << "<line x1=\"" << x << "\" y1=\"" << y - 4 << "\" x2=\"" << x + 24 << "\" y2=\"" << y - 4
           << "\" stroke=\"" << detail::kPalette[s % std::size(detail::kPalette)] << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << x + 30 << "\" y=\"" << y << "\">" << detail::xml_escape(series[s].label) << "</text>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

inline void emit_plot(const std::vector<PlotSeries>& series, const std::string& path, const std::string& title = "") {
    const std::string svg = render_svg(series, title);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << svg;
    if (!os) throw IoError("write failed for '" + path + "'");
}

/// Mean-over-seeds series per optimizer, in config order.
inline std::vector<PlotSeries> series_from_cells(const std::vector<OptimizerKind>& order,
                                                 const std::vector<CellResult>& cells) {
    std::vector<PlotSeries> out;
    for (OptimizerKind kind : order) {
        std::vector<const std::vector<TraceRecord>*> traces;
        for (const auto& c : cells)
            if (c.optimizer == kind && !c.trace.empty()) traces.push_back(&c.trace);
        if (!traces.empty()) out.push_back({std::string(to_string(kind)), mean_gap_curve(traces)});
    }
    return out;
}

/// Loads every trace CSV in `dir` (summary/sweep files excluded) and groups by
/// the run_optimizer header, ordered by the config's optimizer list.
inline std::vector<PlotSeries> load_plot_series(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw IoError("'" + dir + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && entry.path().extension() == ".csv" && name != "summary.csv" &&
            name != "sweep.csv")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<std::string> order;
    std::map<std::string, std::vector<TraceFile>> grouped;
    for (const auto& f : files) {
        TraceFile tf = read_trace_file(f.string());
        const auto label = tf.get("run_optimizer");
        if (!label) throw IoError("trace '" + f.string() + "' has no run_optimizer header");
        if (order.empty()) {
            if (auto listed = tf.get("optimizer")) {
                std::stringstream ss(*listed);
                for (std::string tok; std::getline(ss, tok, ',');) order.push_back(tok);
            }
        }
        grouped[*label].push_back(std::move(tf));
    }
    for (const auto& [label, _] : grouped)
        if (std::find(order.begin(), order.end(), label) == order.end()) order.push_back(label);

    std::vector<PlotSeries> out;
    for (const auto& label : order) {
        auto it = grouped.find(label);
        if (it == grouped.end()) continue;
        std::vector<const std::vector<TraceRecord>*> traces;
        for (const auto& tf : it->second) traces.push_back(&tf.records);
        out.push_back({label, mean_gap_curve(traces)});
    }
    return out;
}

} // namespace zo::harness
