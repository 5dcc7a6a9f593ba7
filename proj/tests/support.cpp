#include "support.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "orbital/errors.hpp"

namespace testsupport {

using orbital::ccw_delta;
using orbital::circ_dist;
using orbital::kTwoPi;
using orbital::LeaderDirection;

Instance make_instance(double circumference, const std::vector<PolarPoint>& pts,
                       const Variant& variant) {
    std::vector<double> lambdas(pts.size(),
                                circumference / static_cast<double>(pts.size()));
    return make_instance_sized(circumference, pts, lambdas, variant);
}

Instance make_instance_sized(double circumference, const std::vector<PolarPoint>& pts,
                             const std::vector<double>& lambdas,
                             const Variant& variant) {
    Instance inst;
    inst.circumference = circumference;
    inst.variant = variant;
    for (size_t i = 0; i < pts.size(); ++i) {
        orbital::Feature f;
        f.id = "p" + std::to_string(i + 1);
        f.position = pts[i];
        f.label_length = lambdas[i];
        inst.features.push_back(f);
    }
    return inst;
}

namespace {

struct Pt {
    double x = 0.0;
    double y = 0.0;
};

// Flatten a leader into a polyline: sampled orbital arc, then the radial
// segment out to the boundary.
std::vector<Pt> leader_polyline(const Leader& l, double r, double disk_radius) {
    std::vector<Pt> pts;
    const bool has_arc =
        l.direction != LeaderDirection::Radial && l.orbital_span > 0.0 && r > 0.0;
    if (has_arc) {
        const double sgn = (l.direction == LeaderDirection::CCW) ? 1.0 : -1.0;
        const double start = l.port - sgn * l.orbital_span;  // feature angle
        const int segments = 96;
        for (int i = 0; i <= segments; ++i) {
            double t = start + sgn * l.orbital_span * i / segments;
            pts.push_back({r * std::cos(t), r * std::sin(t)});
        }
    } else {
        pts.push_back({r * std::cos(l.port), r * std::sin(l.port)});
    }
    pts.push_back({disk_radius * std::cos(l.port), disk_radius * std::sin(l.port)});
    return pts;
}

double cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dist2(const Pt& a, const Pt& b) {
    return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
}

// Intersections between segments pq and uv, with touches counted as hits.
// Candidate contact points are appended to `out`; a collinear overlap longer
// than touch_eps returns true directly (shared measure is always a crossing,
// regardless of where the overlap sits).
bool segment_hits(const Pt& p, const Pt& q, const Pt& u, const Pt& v,
                  double touch_eps, std::vector<Pt>& out) {
    const double len_pq = std::sqrt(dist2(p, q));
    const double len_uv = std::sqrt(dist2(u, v));
    if (len_pq < touch_eps || len_uv < touch_eps) return false;
    const double d1 = cross(p, q, u);
    const double d2 = cross(p, q, v);
    const double d3 = cross(u, v, p);
    const double d4 = cross(u, v, q);
    // Area-based tolerance: a point within touch_eps of the other segment's
    // line counts as on it.
    const double t1 = touch_eps * len_pq;
    const double t2 = touch_eps * len_uv;
    const bool on1u = std::abs(d1) <= t1, on1v = std::abs(d2) <= t1;
    const bool on2p = std::abs(d3) <= t2, on2q = std::abs(d4) <= t2;

    if (on1u && on1v && on2p && on2q) {
        // Collinear: measure the overlap along the dominant axis.
        auto proj = [&](const Pt& a) {
            return std::abs(q.x - p.x) >= std::abs(q.y - p.y) ? a.x : a.y;
        };
        double lo1 = std::min(proj(p), proj(q)), hi1 = std::max(proj(p), proj(q));
        double lo2 = std::min(proj(u), proj(v)), hi2 = std::max(proj(u), proj(v));
        return std::min(hi1, hi2) - std::max(lo1, lo2) > touch_eps;
    }

    const bool straddle1 = (d1 > t1 && d2 < -t1) || (d1 < -t1 && d2 > t1);
    const bool straddle2 = (d3 > t2 && d4 < -t2) || (d3 < -t2 && d4 > t2);
    if (straddle1 && straddle2) {
        const double t = d1 / (d1 - d2);  // parameter of the hit along uv
        out.push_back({u.x + (v.x - u.x) * t, u.y + (v.y - u.y) * t});
        return false;
    }

    // Endpoint-on-segment touches (includes crossings that land exactly on
    // a sampled arc vertex, where neither adjacent chord straddles).
    auto within = [&](const Pt& a, const Pt& b, const Pt& x) {
        const double len = std::sqrt(dist2(a, b));
        const double dot = (x.x - a.x) * (b.x - a.x) + (x.y - a.y) * (b.y - a.y);
        return dot >= -touch_eps * len && dot <= len * len + touch_eps * len;
    };
    if (on1u && within(p, q, u)) out.push_back(u);
    if (on1v && within(p, q, v)) out.push_back(v);
    if (on2p && within(u, v, p)) out.push_back(p);
    if (on2q && within(u, v, q)) out.push_back(q);
    return false;
}

}  // namespace

bool sampled_leaders_cross(const Leader& a, const Leader& b, double radius_a,
                           double radius_b, double disk_radius, double touch_eps) {
    const std::vector<Pt> pa = leader_polyline(a, radius_a, disk_radius);
    const std::vector<Pt> pb = leader_polyline(b, radius_b, disk_radius);
    // A contact only fails to be a crossing when it happens at a leader
    // endpoint: a feature position or a port.
    const Pt endpoints[4] = {pa.front(), pa.back(), pb.front(), pb.back()};
    std::vector<Pt> hits;
    for (size_t i = 0; i + 1 < pa.size(); ++i) {
        for (size_t j = 0; j + 1 < pb.size(); ++j) {
            if (segment_hits(pa[i], pa[i + 1], pb[j], pb[j + 1], touch_eps, hits))
                return true;  // collinear overlap
        }
    }
    const double excl = 4.0 * touch_eps;
    for (const Pt& h : hits) {
        bool at_endpoint = false;
        for (const Pt& e : endpoints)
            if (dist2(h, e) <= excl * excl) at_endpoint = true;
        if (!at_endpoint) return true;
    }
    return false;
}

double degeneracy_margin(const Leader& a, const Leader& b) {
    auto arc_endpoints = [](const Leader& l) {
        const double sgn = (l.direction == LeaderDirection::CCW) ? 1.0 : -1.0;
        return std::pair<double, double>{l.port - sgn * l.orbital_span, l.port};
    };
    auto [a0, a1] = arc_endpoints(a);
    auto [b0, b1] = arc_endpoints(b);
    double m = std::numeric_limits<double>::infinity();
    for (double x : {a0, a1})
        for (double y : {b0, b1}) m = std::min(m, circ_dist(x, y));
    // Spans at the representability limits blur the arc/no-arc distinction.
    for (const Leader* l : {&a, &b}) {
        m = std::min(m, l->orbital_span);
        m = std::min(m, kTwoPi - l->orbital_span);
    }
    return m;
}

bool xml_well_formed(const std::string& text, std::string* error) {
    auto fail = [&](const std::string& why) {
        if (error) *error = why;
        return false;
    };
    std::vector<std::string> stack;
    size_t i = 0;
    const size_t n = text.size();
    bool saw_element = false;
    while (i < n) {
        if (text[i] != '<') {
            ++i;
            continue;
        }
        if (text.compare(i, 4, "<!--") == 0) {
            size_t e = text.find("-->", i + 4);
            if (e == std::string::npos) return fail("unterminated comment");
            i = e + 3;
            continue;
        }
        if (text.compare(i, 2, "<?") == 0) {
            size_t e = text.find("?>", i + 2);
            if (e == std::string::npos) return fail("unterminated declaration");
            i = e + 2;
            continue;
        }
        if (text.compare(i, 2, "<!") == 0) {
            size_t e = text.find('>', i + 2);
            if (e == std::string::npos) return fail("unterminated doctype");
            i = e + 1;
            continue;
        }
        const bool closing = (i + 1 < n && text[i + 1] == '/');
        size_t j = i + (closing ? 2 : 1);
        size_t name_start = j;
        while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                         text[j] == ':' || text[j] == '-' || text[j] == '_'))
            ++j;
        if (j == name_start) return fail("empty tag name at offset " + std::to_string(i));
        std::string name = text.substr(name_start, j - name_start);
        // Scan attributes until '>' while respecting quotes.
        bool self_closing = false;
        char quote = 0;
        while (j < n) {
            char c = text[j];
            if (quote) {
                if (c == quote) quote = 0;
            } else if (c == '"' || c == '\'') {
                quote = c;
            } else if (c == '<') {
                return fail("unescaped '<' inside tag " + name);
            } else if (c == '>') {
                break;
            } else if (c == '/' && j + 1 < n && text[j + 1] == '>') {
                self_closing = true;
            }
            ++j;
        }
        if (j >= n) return fail("unterminated tag " + name);
        if (quote) return fail("unterminated attribute value in " + name);
        if (closing) {
            if (self_closing) return fail("closing tag with '/': " + name);
            if (stack.empty()) return fail("closing tag without opener: " + name);
            if (stack.back() != name)
                return fail("mismatched closing tag: expected " + stack.back() +
                            ", got " + name);
            stack.pop_back();
        } else if (!self_closing) {
            stack.push_back(name);
        }
        saw_element = true;
        i = j + 1;
    }
    if (!stack.empty()) return fail("unclosed tag: " + stack.back());
    if (!saw_element) return fail("no elements");
    return true;
}

long long count_occurrences(const std::string& text, const std::string& needle) {
    long long count = 0;
    size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

AssignmentResult brute_force_assignment(const CostMatrix& m) {
    if (m.rows > m.cols || m.cols > 9)
        throw orbital::InvalidArgument("brute_force_assignment: matrix too large");
    AssignmentResult best;
    best.cost = std::numeric_limits<double>::infinity();
    std::vector<int> current(m.rows, -1);
    std::vector<bool> used(m.cols, false);
    const double tie = 1e-9;

    auto lex_less = [](const std::vector<int>& a, const std::vector<int>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    };

    std::function<void(int, double)> rec = [&](int row, double acc) {
        if (row == m.rows) {
            if (acc < best.cost - tie ||
                (acc <= best.cost + tie && (best.column_of_row.empty() ||
                                            lex_less(current, best.column_of_row)))) {
                if (acc < best.cost) best.cost = acc;
                best.column_of_row = current;
            }
            return;
        }
        for (int c = 0; c < m.cols; ++c) {
            if (used[c]) continue;
            used[c] = true;
            current[row] = c;
            rec(row + 1, acc + m.at(row, c));
            used[c] = false;
        }
        current[row] = -1;
    };
    rec(0, 0.0);
    return best;
}

}  // namespace testsupport
