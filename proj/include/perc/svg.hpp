#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <span>
#include <string>

#include "perc/csv.hpp"

namespace perc {

struct ChartPoint {
    double x = 0.0;
    double y = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

// Minimal hand-rolled SVG 1.1 line chart: axes, tick labels, a shaded
// confidence band and the mean polyline. No plotting dependency.
inline void write_line_chart(std::ostream& out, const std::string& title,
                             const std::string& x_label, const std::string& y_label,
                             std::span<const ChartPoint> points) {
    const double width = 640, height = 420;
    const double ml = 70, mr = 20, mt = 40, mb = 50;

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!points.empty()) {
        xmin = xmax = points[0].x;
        ymin = ymax = points[0].lo;
        for (const auto& p : points) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min({ymin, p.lo, p.y});
            ymax = std::max({ymax, p.hi, p.y});
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    const double ypad = (ymax - ymin) * 0.08 + 1e-12;
    ymin -= ypad;
    ymax += ypad;

    auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto sy = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";

    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        out << "<line x1=\"" << sx(xv) << "\" y1=\"" << height - mb << "\" x2=\"" << sx(xv)
            << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << sx(xv) << "\" y=\"" << height - mb + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt_double(std::round(xv * 1000) / 1000)
            << "</text>\n";
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(yv) << "\" x2=\"" << ml << "\" y2=\""
            << sy(yv) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << sy(yv) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << fmt_double(std::round(yv * 10000) / 10000)
            << "</text>\n";
    }
    out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << (mt + height - mb) / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
        << (mt + height - mb) / 2 << ")\">" << y_label << "</text>\n";

    if (!points.empty()) {
        // confidence band
        out << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\" points=\"";
        for (const auto& p : points) out << sx(p.x) << ',' << sy(p.hi) << ' ';
        for (size_t i = points.size(); i-- > 0;) out << sx(points[i].x) << ',' << sy(points[i].lo) << ' ';
        out << "\"/>\n";
        // mean line
        out << "<polyline fill=\"none\" stroke=\"#08519c\" stroke-width=\"1.5\" points=\"";
        for (const auto& p : points) out << sx(p.x) << ',' << sy(p.y) << ' ';
        out << "\"/>\n";
        for (const auto& p : points)
            out << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y)
                << "\" r=\"2.5\" fill=\"#08519c\"/>\n";
    }
    out << "</svg>\n";
}

} // namespace perc
