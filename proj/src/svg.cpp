#include "stsp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace stsp {

namespace {

std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

struct Mapper {
    double min_x = 0, min_y = 0, scale = 1, height = 0, margin = 40;

    // SVG y grows downward, so the y axis is flipped
    double px(double x) const { return margin + (x - min_x) * scale; }
    double py(double y) const { return height - margin - (y - min_y) * scale; }
};

}  // namespace

std::string render_route_svg(const Instance& ins, const Solution& sol) {
    const Graph& g = ins.graph;
    for (ArcId k : sol.walk) g.arc(k);  // throws for unknown ids

    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;
    for (const auto& [node, p] : ins.coords) {
        (void)node;
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    double span = std::max({max_x - min_x, max_y - min_y, 1.0});
    Mapper m;
    m.min_x = min_x;
    m.min_y = min_y;
    m.scale = 720.0 / span;
    double width = m.margin * 2 + (max_x - min_x) * m.scale;
    m.height = m.margin * 2 + (max_y - min_y) * m.scale;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt3(width) +
           "\" height=\"" + fmt3(m.height) + "\" viewBox=\"0 0 " + fmt3(width) +
           " " + fmt3(m.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    out += "<g stroke=\"#c8c8c8\" stroke-width=\"1\">\n";
    for (const Arc& a : g.arcs()) {
        const Point& u = ins.coords.at(a.from);
        const Point& v = ins.coords.at(a.to);
        out += "<line x1=\"" + fmt3(m.px(u.x)) + "\" y1=\"" + fmt3(m.py(u.y)) +
               "\" x2=\"" + fmt3(m.px(v.x)) + "\" y2=\"" + fmt3(m.py(v.y)) +
               "\"/>\n";
    }
    out += "</g>\n";

    out += "<g stroke=\"#d62728\" stroke-width=\"2.5\" fill=\"none\">\n";
    for (ArcId k : sol.walk) {
        const Arc& a = g.arc(k);
        const Point& u = ins.coords.at(a.from);
        const Point& v = ins.coords.at(a.to);
        out += "<line x1=\"" + fmt3(m.px(u.x)) + "\" y1=\"" + fmt3(m.py(u.y)) +
               "\" x2=\"" + fmt3(m.px(v.x)) + "\" y2=\"" + fmt3(m.py(v.y)) +
               "\"/>\n";
    }
    out += "</g>\n";

    out += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#d62728\">\n";
    for (std::size_t i = 0; i < sol.walk.size(); ++i) {
        const Arc& a = g.arc(sol.walk[i]);
        const Point& u = ins.coords.at(a.from);
        const Point& v = ins.coords.at(a.to);
        // label sits at the leg's one-third point so opposite-direction
        // traversals of the same segment do not overlap
        double lx = m.px(u.x + (v.x - u.x) / 3.0) + 4.0;
        double ly = m.py(u.y + (v.y - u.y) / 3.0) - 4.0;
        out += "<text x=\"" + fmt3(lx) + "\" y=\"" + fmt3(ly) + "\">" +
               std::to_string(i + 1) + "</text>\n";
    }
    out += "</g>\n";

    out += "<g>\n";
    for (NodeId v : g.nodes()) {
        const Point& p = ins.coords.at(v);
        double cx = m.px(p.x), cy = m.py(p.y);
        if (v == 0) {
            out += "<rect x=\"" + fmt3(cx - 7) + "\" y=\"" + fmt3(cy - 7) +
                   "\" width=\"14\" height=\"14\" fill=\"#1f77b4\"/>\n";
        } else if (ins.is_required(v)) {
            out += "<circle cx=\"" + fmt3(cx) + "\" cy=\"" + fmt3(cy) +
                   "\" r=\"6\" fill=\"#ff7f0e\"/>\n";
        } else {
            out += "<circle cx=\"" + fmt3(cx) + "\" cy=\"" + fmt3(cy) +
                   "\" r=\"4.5\" fill=\"white\" stroke=\"#555555\"/>\n";
        }
        out += "<text x=\"" + fmt3(cx + 8) + "\" y=\"" + fmt3(cy + 4) +
               "\" font-family=\"sans-serif\" font-size=\"12\" "
               "fill=\"#333333\">" +
               std::to_string(v) + "</text>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

std::string render_scaling_svg(
    const std::map<std::string, std::vector<std::pair<double, double>>>& series) {
    bool plottable = false;
    for (const auto& [label, pts] : series) {
        (void)label;
        if (pts.size() >= 2) plottable = true;
    }
    if (!plottable)
        throw std::invalid_argument(
            "scaling chart needs a series with at least two points");

    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double max_y = 0.0;
    for (const auto& [label, pts] : series) {
        (void)label;
        for (auto [x, y] : pts) {
            min_x = std::min(min_x, x);
            max_x = std::max(max_x, x);
            max_y = std::max(max_y, y);
        }
    }
    if (max_x == min_x) max_x = min_x + 1.0;
    if (max_y <= 0.0) max_y = 1.0;
    max_y *= 1.05;

    const double w = 640, h = 420, ml = 70, mr = 140, mt = 30, mb = 50;
    auto px = [&](double x) { return ml + (x - min_x) / (max_x - min_x) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - y / max_y * (h - mt - mb); };

    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                     "#9467bd", "#ff7f0e", "#8c564b"};

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt3(w) +
           "\" height=\"" + fmt3(h) + "\" viewBox=\"0 0 " + fmt3(w) + " " +
           fmt3(h) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<g stroke=\"#333333\" stroke-width=\"1\">\n";
    out += "<line x1=\"" + fmt3(ml) + "\" y1=\"" + fmt3(h - mb) + "\" x2=\"" +
           fmt3(w - mr) + "\" y2=\"" + fmt3(h - mb) + "\"/>\n";
    out += "<line x1=\"" + fmt3(ml) + "\" y1=\"" + fmt3(mt) + "\" x2=\"" +
           fmt3(ml) + "\" y2=\"" + fmt3(h - mb) + "\"/>\n";
    out += "</g>\n";

    out += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
    for (int i = 0; i <= 4; ++i) {
        double y = max_y * i / 4.0;
        out += "<text x=\"" + fmt3(ml - 8) + "\" y=\"" + fmt3(py(y) + 4) +
               "\" text-anchor=\"end\">" + fmt3(y) + "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        double x = min_x + (max_x - min_x) * i / 4.0;
        out += "<text x=\"" + fmt3(px(x)) + "\" y=\"" + fmt3(h - mb + 18) +
               "\" text-anchor=\"middle\">" + fmt3(x) + "</text>\n";
    }
    out += "<text x=\"" + fmt3((ml + w - mr) / 2) + "\" y=\"" + fmt3(h - 10) +
           "\" text-anchor=\"middle\">nodes</text>\n";
    out += "<text x=\"16\" y=\"" + fmt3((mt + h - mb) / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           fmt3((mt + h - mb) / 2) + ")\">objective</text>\n";
    out += "</g>\n";

    int color = 0;
    for (const auto& [label, pts] : series) {
        const char* stroke = kPalette[color % 6];
        if (pts.size() >= 2) {
            std::vector<std::pair<double, double>> sorted = pts;
            std::sort(sorted.begin(), sorted.end());
            std::string points;
            for (auto [x, y] : sorted) {
                if (!points.empty()) points += ' ';
                points += fmt3(px(x)) + "," + fmt3(py(y));
            }
            out += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) +
                   "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
            for (auto [x, y] : sorted)
                out += "<circle cx=\"" + fmt3(px(x)) + "\" cy=\"" + fmt3(py(y)) +
                       "\" r=\"3\" fill=\"" + std::string(stroke) + "\"/>\n";
        }
        double ly = mt + 16.0 * color + 10.0;
        out += "<rect x=\"" + fmt3(w - mr + 12) + "\" y=\"" + fmt3(ly - 8) +
               "\" width=\"10\" height=\"10\" fill=\"" + std::string(stroke) +
               "\"/>\n";
        out += "<text x=\"" + fmt3(w - mr + 27) + "\" y=\"" + fmt3(ly + 1) +
               "\" font-family=\"sans-serif\" font-size=\"11\" "
               "fill=\"#333333\">" +
               label + "</text>\n";
        ++color;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace stsp
