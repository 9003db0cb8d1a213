#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>

#include "sssched/io.hpp"

namespace sssched {

struct GanttStyle {
    double plot_width = 800.0;
    double lane_height = 28.0;
    double margin_left = 60.0;
    double margin_top = 30.0;
    double margin_bottom = 40.0;
    int axis_ticks = 5;
};

namespace detail {

inline std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string fmt_time(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline const char* job_color(JobId id) {
    static constexpr std::array<const char*, 10> palette{"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                                         "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
    const auto k = static_cast<std::size_t>(id < 0 ? -id : id) % palette.size();
    return palette[k];
}

}  // namespace detail

/// SVG 1.1 Gantt chart: one lane per processor, one rectangle per segment and
/// contiguous processor run, labelled with the job id; deadlines as red ticks.
/// Output bytes depend only on the input.
inline std::string render_gantt_svg(const SolutionFile& file, const GanttStyle& style = {}) {
    using detail::fmt2;
    double horizon = 0.0;
    for (const auto& js : file.schedule.jobs)
        for (const auto& seg : js.segments) horizon = std::max(horizon, seg.end);
    std::set<double> deadlines;
    for (const auto& [id, window] : file.windows) {
        deadlines.insert(window.second);
        horizon = std::max(horizon, window.second);
    }
    if (!(horizon > 0.0)) horizon = 1.0;

    const int lanes = std::max(file.m, 1);
    const double plot_height = lanes * style.lane_height;
    const double width = style.margin_left + style.plot_width + 20.0;
    const double height = style.margin_top + plot_height + style.margin_bottom;
    const double axis_y = style.margin_top + plot_height;
    auto x_of = [&](double t) { return style.margin_left + t / horizon * style.plot_width; };
    auto y_of = [&](int lane) { return style.margin_top + lane * style.lane_height; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt2(width) << "\" height=\""
        << fmt2(height) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<title>" << to_string(file.variant.kind) << " schedule, m=" << file.m << ", energy=" << file.energy
        << "</title>\n";

    for (int lane = 0; lane < lanes; ++lane) {
        svg << "<rect x=\"" << fmt2(style.margin_left) << "\" y=\"" << fmt2(y_of(lane)) << "\" width=\""
            << fmt2(style.plot_width) << "\" height=\"" << fmt2(style.lane_height) << "\" fill=\""
            << (lane % 2 == 0 ? "#f4f4f4" : "#e8e8e8") << "\"/>\n";
        svg << "<text x=\"" << fmt2(style.margin_left - 6.0) << "\" y=\""
            << fmt2(y_of(lane) + style.lane_height / 2.0 + 4.0) << "\" text-anchor=\"end\">P" << lane << "</text>\n";
    }

    for (const auto& js : file.schedule.jobs) {
        std::vector<int> procs = js.procs;
        std::sort(procs.begin(), procs.end());
        for (const auto& seg : js.segments) {
            for (std::size_t a = 0; a < procs.size();) {
                std::size_t b = a;
                while (b + 1 < procs.size() && procs[b + 1] == procs[b] + 1) ++b;
                const double x = x_of(seg.start);
                const double w = x_of(seg.end) - x;
                const double y = y_of(procs[a]) + 2.0;
                const double h = (procs[b] - procs[a] + 1) * style.lane_height - 4.0;
                svg << "<rect x=\"" << fmt2(x) << "\" y=\"" << fmt2(y) << "\" width=\"" << fmt2(w)
                    << "\" height=\"" << fmt2(h) << "\" fill=\"" << detail::job_color(js.job_id)
                    << "\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n";
                svg << "<text x=\"" << fmt2(x + w / 2.0) << "\" y=\"" << fmt2(y + h / 2.0 + 4.0)
                    << "\" text-anchor=\"middle\">" << js.job_id << "</text>\n";
                a = b + 1;
            }
        }
    }

    svg << "<line x1=\"" << fmt2(style.margin_left) << "\" y1=\"" << fmt2(axis_y) << "\" x2=\""
        << fmt2(style.margin_left + style.plot_width) << "\" y2=\"" << fmt2(axis_y) << "\" stroke=\"#000000\"/>\n";
    for (int k = 0; k <= style.axis_ticks; ++k) {
        const double t = horizon * k / style.axis_ticks;
        svg << "<line x1=\"" << fmt2(x_of(t)) << "\" y1=\"" << fmt2(axis_y) << "\" x2=\"" << fmt2(x_of(t))
            << "\" y2=\"" << fmt2(axis_y + 5.0) << "\" stroke=\"#000000\"/>\n";
        svg << "<text x=\"" << fmt2(x_of(t)) << "\" y=\"" << fmt2(axis_y + 17.0) << "\" text-anchor=\"middle\">"
            << detail::fmt_time(t) << "</text>\n";
    }
    for (double d : deadlines)
        svg << "<line class=\"deadline\" x1=\"" << fmt2(x_of(d)) << "\" y1=\"" << fmt2(style.margin_top - 6.0)
            << "\" x2=\"" << fmt2(x_of(d)) << "\" y2=\"" << fmt2(axis_y) << "\" stroke=\"#d62728\""
            << " stroke-dasharray=\"3,3\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace sssched
