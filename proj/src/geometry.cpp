#include "orbital/geometry.hpp"

#include <cmath>

namespace orbital {

std::string to_string(LeaderDirection d) {
    switch (d) {
        case LeaderDirection::CW: return "cw";
        case LeaderDirection::CCW: return "ccw";
        case LeaderDirection::Radial: return "radial";
    }
    return "radial";
}

LeaderDirection direction_from_string(const std::string& s) {
    if (s == "cw") return LeaderDirection::CW;
    if (s == "ccw") return LeaderDirection::CCW;
    if (s == "radial") return LeaderDirection::Radial;
    throw InvalidArgument("unknown leader direction: " + s);
}

double leader_length(const PolarPoint& feature, double orbital_span,
                     double circumference) {
    if (circumference <= 0.0)
        throw InvalidArgument("circumference must be positive");
    if (orbital_span < 0.0 || orbital_span >= kTwoPi)
        throw InvalidArgument("orbital span must lie in [0, 2*pi)");
    double disk_radius = circumference / kTwoPi;
    if (feature.radius < 0.0 || feature.radius > disk_radius)
        throw InvalidArgument("feature radius must lie in [0, disk radius]");
    return disk_radius - feature.radius + feature.radius * orbital_span;
}

Leader make_leader(int feature_index, const PolarPoint& feature, double port,
                   LeaderDirection requested, const Policy& policy) {
    Leader l;
    l.feature = feature_index;
    l.port = normalize_angle(port);
    if (feature.radius <= policy.eps_theta) {
        // Center features have no orbit to travel on.
        l.direction = LeaderDirection::Radial;
        l.orbital_span = 0.0;
        return l;
    }
    double ccw = ccw_delta(feature.angle, l.port);
    if (ccw <= policy.eps_theta || ccw >= kTwoPi - policy.eps_theta) {
        l.direction = LeaderDirection::Radial;
        l.orbital_span = 0.0;
        return l;
    }
    if (requested == LeaderDirection::Radial)
        throw InvalidArgument("radial leader requested but port and feature angles differ");
    l.direction = requested;
    l.orbital_span = (requested == LeaderDirection::CCW) ? ccw : kTwoPi - ccw;
    return l;
}

LeaderDirection forced_direction(double feature_angle, double port,
                                 double innermost_port, const Policy& policy) {
    double ccw = ccw_delta(feature_angle, port);
    if (ccw <= policy.eps_theta || ccw >= kTwoPi - policy.eps_theta)
        return LeaderDirection::Radial;
    double t = ccw_delta(feature_angle, innermost_port);
    bool in_ccw = t > policy.eps_theta && t < ccw - policy.eps_theta;
    bool in_cw = t > ccw + policy.eps_theta && t < kTwoPi - policy.eps_theta;
    if (in_ccw) return LeaderDirection::CW;
    if (in_cw) return LeaderDirection::CCW;
    // The segment only touches either arc's endpoint: take the shorter span,
    // CCW when both spans equal pi.
    return ccw <= kPi + policy.eps_theta ? LeaderDirection::CCW : LeaderDirection::CW;
}

namespace {

/// Counter-clockwise swept interval of a leader's orbital arc as
/// (start, extent); extent 0 for radial leaders.
CircleInterval swept_interval(const Leader& l, double feature_angle) {
    if (l.direction == LeaderDirection::Radial || l.orbital_span <= 0.0)
        return {normalize_angle(feature_angle), 0.0};
    double start = (l.direction == LeaderDirection::CCW)
                       ? feature_angle
                       : l.port;
    return {normalize_angle(start), l.orbital_span};
}

bool strictly_inside(const CircleInterval& iv, double angle, double tol) {
    if (iv.extent <= 2.0 * tol) return false;
    double t = ccw_delta(iv.start, angle);
    return t > tol && t < iv.extent - tol;
}

/// Overlap of two closed arcs on the same orbit, measured in radians.
double arc_overlap(const CircleInterval& a, const CircleInterval& b) {
    std::vector<CircleInterval> pieces;
    CircularSet::intersect_pair(a, b, pieces);
    double m = 0.0;
    for (const auto& p : pieces) m += p.extent;
    return m;
}

}  // namespace

bool leaders_cross(const Leader& a, const Leader& b, double radius_a,
                   double radius_b, double disk_radius, const Policy& policy) {
    const double tol = policy.eps_theta;
    double len_tol = policy.eps_len_rel * kTwoPi * disk_radius;

    // Feature angles are recoverable from port, span and direction.
    auto feature_angle = [](const Leader& l) {
        if (l.direction == LeaderDirection::CCW)
            return normalize_angle(l.port - l.orbital_span);
        if (l.direction == LeaderDirection::CW)
            return normalize_angle(l.port + l.orbital_span);
        return l.port;  // radial: angle == port
    };

    if (std::abs(radius_a - radius_b) <= len_tol) {
        if (policy.strict)
            throw DegenerateInput(
                "features on equal orbits: crossing predicate undefined under "
                "the strict policy");
        // Same orbit: radial segments coincide, a radial endpoint sits on the
        // other's arc, or the two arcs overlap along the shared orbit.
        double r = std::max(radius_a, radius_b);
        if (angles_equal(a.port, b.port, tol)) return r < disk_radius - len_tol;
        CircleInterval sa = swept_interval(a, feature_angle(a));
        CircleInterval sb = swept_interval(b, feature_angle(b));
        if (strictly_inside(sb, a.port, tol)) return true;
        if (strictly_inside(sa, b.port, tol)) return true;
        return arc_overlap(sa, sb) > tol;
    }

    const Leader& inner = (radius_a < radius_b) ? a : b;
    const Leader& outer = (radius_a < radius_b) ? b : a;
    double outer_radius = std::max(radius_a, radius_b);

    // Radial segments share an angle: they overlap on [outer_radius, R].
    if (angles_equal(inner.port, outer.port, tol))
        return outer_radius < disk_radius - len_tol;

    // Inner radial segment vs outer orbital arc.
    CircleInterval swept = swept_interval(outer, feature_angle(outer));
    return strictly_inside(swept, inner.port, tol);
}

}  // namespace orbital
