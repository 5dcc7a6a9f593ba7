#pragma once

#include <string>
#include <vector>

#include "orbital/angles.hpp"
#include "orbital/errors.hpp"

namespace orbital {

/// Tolerances and degeneracy handling shared by every geometric operation.
/// Angles are compared with an absolute tolerance; lengths with a tolerance
/// relative to the circumference.  Strict mode refuses features on equal
/// orbits (the crossing-freeness guarantees assume distinct radii); lenient
/// mode proceeds and downgrades the guarantee to a diagnostic.
struct Policy {
    double eps_theta = 1e-9;    // radians, absolute
    double eps_len_rel = 1e-9;  // relative to circumference
    bool strict = true;

    double len_tol(double circumference) const { return eps_len_rel * circumference; }

    static Policy lenient() { return Policy{1e-9, 1e-9, false}; }
};

struct PolarPoint {
    double radius = 0.0;
    double angle = 0.0;  // radians, [0, 2*pi)
};

enum class LeaderDirection { CW, CCW, Radial };

std::string to_string(LeaderDirection d);
LeaderDirection direction_from_string(const std::string& s);

/// One leader: an orbital arc at the feature's radius from the feature angle
/// to the port angle (sweeping `orbital_span` radians in `direction`),
/// followed by a radial segment out to the boundary circle.
struct Leader {
    int feature = -1;  // index into the instance's feature list
    LeaderDirection direction = LeaderDirection::Radial;
    double orbital_span = 0.0;  // radians, [0, 2*pi)
    double port = 0.0;          // angle of the port on the boundary
};

/// One label: a boundary arc of the given angular extent; `port` is the
/// point where the leader attaches, lying on the closed arc.
struct Label {
    int feature = -1;
    double start = 0.0;   // angle where the arc begins (ccw)
    double extent = 0.0;  // radians, (0, 2*pi]
    double port = 0.0;
};

struct Labeling {
    std::vector<Label> labels;    // one per feature, feature-index order
    std::vector<Leader> leaders;  // one per feature, feature-index order
    double objective = 0.0;       // total leader length
};

/// Length of an orbital-radial leader: the radial segment has length
/// R - r and the orbital arc has length r * span, R being the disk radius
/// circumference / (2*pi).
double leader_length(const PolarPoint& feature, double orbital_span,
                     double circumference);

/// Build the leader from `feature` to the port at `port`, sweeping in
/// `requested` direction.  Collapses to Radial when the feature sits at the
/// center or the port angle coincides with the feature angle.
Leader make_leader(int feature_index, const PolarPoint& feature, double port,
                   LeaderDirection requested, const Policy& policy = {});

/// Direction forced on a leader by the innermost leader's radial segment at
/// `innermost_port`: the unique direction whose orbital arc does not sweep
/// across that segment.  When both directions merely touch it, the shorter
/// span wins (CCW on an exact tie).
LeaderDirection forced_direction(double feature_angle, double port,
                                 double innermost_port, const Policy& policy = {});

/// Crossing predicate for two leaders on distinct orbits: they cross iff the
/// inner leader's port angle lies strictly inside the open interval swept by
/// the outer leader's orbital arc, or the radial segments share an angle
/// while overlapping in radius.  Touching at endpoints on the boundary
/// circle does not count.  Equal radii raise DegenerateInput under the
/// strict policy; the lenient policy additionally tests same-orbit arc
/// overlap.
bool leaders_cross(const Leader& a, const Leader& b, double radius_a,
                   double radius_b, double disk_radius, const Policy& policy = {});

}  // namespace orbital
