#include "orbital/render.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "orbital/errors.hpp"
#include "orbital/validate.hpp"

namespace orbital {

namespace {

// Fixed-point pixel coordinates keep the output byte-stable across runs.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    std::string s(buf);
    if (s == "-0.000") s = "0.000";
    return s;
}

struct Canvas {
    double cx = 0.0;
    double cy = 0.0;
    double scale = 0.0;  // pixels per world unit

    double px(double r, double theta) const { return cx + scale * r * std::cos(theta); }
    double py(double r, double theta) const { return cy - scale * r * std::sin(theta); }
};

void append_point(std::string& out, const Canvas& c, double r, double theta) {
    out += fmt(c.px(r, theta));
    out += ' ';
    out += fmt(c.py(r, theta));
}

// A counterclockwise sweep on screen needs SVG sweep flag 0 (the SVG y axis
// points down).  Arcs longer than a half turn are split at the midpoint so
// no segment needs the large-arc flag.
void append_arc_path(std::string& out, const Canvas& c, double r, double from,
                     double span, LeaderDirection dir) {
    const double sgn = (dir == LeaderDirection::CW) ? -1.0 : 1.0;
    const char sweep = (dir == LeaderDirection::CW) ? '1' : '0';
    const std::string radius = fmt(c.scale * r);
    int pieces = (span > kPi) ? 2 : 1;
    double step = span / pieces;
    for (int i = 1; i <= pieces; ++i) {
        out += " A ";
        out += radius;
        out += ' ';
        out += radius;
        out += " 0 0 ";
        out += sweep;
        out += ' ';
        append_point(out, c, r, from + sgn * step * i);
    }
}

}  // namespace

std::string render_svg(const Instance& instance, const Labeling* labeling,
                       const RenderStyle& style, const Policy& policy) {
    const int n = instance.size();
    if (labeling) {
        for (const auto& l : labeling->labels)
            if (l.feature < 0 || l.feature >= n)
                throw InvalidArgument("labeling references unknown feature index " +
                                      std::to_string(l.feature));
        for (const auto& l : labeling->leaders)
            if (l.feature < 0 || l.feature >= n)
                throw InvalidArgument("labeling references unknown feature index " +
                                      std::to_string(l.feature));
    }

    const double R = instance.radius();
    const double label_r = 1.07;  // label band radius as a fraction of R
    Canvas canvas;
    canvas.cx = canvas.cy = style.size_px / 2.0;
    const double world_max = (R > 0.0) ? R * label_r : 1.0;
    canvas.scale = (style.size_px / 2.0 - style.margin_px) / world_max;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(style.size_px) +
           "\" height=\"" + fmt(style.size_px) + "\" viewBox=\"0 0 " +
           fmt(style.size_px) + " " + fmt(style.size_px) + "\">\n";
    svg += "<style>\n";
    svg += ".boundary { fill: none; stroke: #333333; stroke-width: " +
           fmt(style.boundary_width) + "; }\n";
    svg += ".feature { fill: #1f77b4; stroke: none; }\n";
    svg += ".leader { fill: none; stroke: #d62728; stroke-width: " +
           fmt(style.leader_width) + "; }\n";
    svg += ".label-arc { fill: none; stroke: #2ca02c; stroke-width: " +
           fmt(style.label_width) + "; stroke-linecap: butt; }\n";
    svg += ".candidate-tick { stroke: #999999; stroke-width: 1; }\n";
    svg += ".witness { stroke: #9467bd; stroke-width: 1; stroke-dasharray: 4 3; }\n";
    svg += "</style>\n";

    svg += "<circle class=\"boundary\" cx=\"" + fmt(canvas.cx) + "\" cy=\"" +
           fmt(canvas.cy) + "\" r=\"" + fmt(canvas.scale * R) + "\"/>\n";

    if (style.draw_candidates && instance.variant.ports == PortMode::Locked) {
        for (double c : instance.candidates) {
            std::string d = "M ";
            append_point(d, canvas, R * 0.97, c);
            d += " L ";
            append_point(d, canvas, R * 1.03, c);
            svg += "<path class=\"candidate-tick\" d=\"" + d + "\"/>\n";
        }
    }

    if (labeling) {
        for (const auto& label : labeling->labels) {
            const double r = R * label_r;
            if (label.extent >= kTwoPi - policy.eps_theta) {
                svg += "<circle class=\"label-arc\" cx=\"" + fmt(canvas.cx) +
                       "\" cy=\"" + fmt(canvas.cy) + "\" r=\"" +
                       fmt(canvas.scale * r) + "\"/>\n";
                continue;
            }
            std::string d = "M ";
            append_point(d, canvas, r, label.start);
            append_arc_path(d, canvas, r, label.start, label.extent,
                            LeaderDirection::CCW);
            svg += "<path class=\"label-arc\" d=\"" + d + "\"/>\n";
        }

        for (const auto& leader : labeling->leaders) {
            const PolarPoint& f = instance.features[leader.feature].position;
            std::string d = "M ";
            append_point(d, canvas, f.radius, f.angle);
            const bool has_arc = leader.direction != LeaderDirection::Radial &&
                                 leader.orbital_span > 0.0 &&
                                 canvas.scale * f.radius > 1e-6;
            if (has_arc) {
                append_arc_path(d, canvas, f.radius, f.angle, leader.orbital_span,
                                leader.direction);
            }
            d += " L ";
            append_point(d, canvas, R, leader.port);
            svg += "<path class=\"leader\" d=\"" + d + "\"/>\n";
        }

        if (style.draw_witness) {
            auto chi = find_splitting_witness(*labeling, instance, policy);
            if (chi) {
                std::string d = "M " + fmt(canvas.cx) + " " + fmt(canvas.cy) + " L ";
                append_point(d, canvas, R, *chi);
                svg += "<path class=\"witness\" d=\"" + d + "\"/>\n";
            }
        }
    }

    for (const auto& feat : instance.features) {
        svg += "<circle class=\"feature\" cx=\"" +
               fmt(canvas.px(feat.position.radius, feat.position.angle)) + "\" cy=\"" +
               fmt(canvas.py(feat.position.radius, feat.position.angle)) + "\" r=\"" +
               fmt(style.feature_radius_px) + "\"/>\n";
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace orbital
