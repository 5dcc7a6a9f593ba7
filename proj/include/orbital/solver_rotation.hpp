#pragma once

#include "orbital/instance.hpp"
#include "orbital/solve.hpp"

namespace orbital {

// With the order of labels around the boundary locked, one rotation phi0 (the
// port angle of the first feature in the locked order) pins every label and
// port: feature f's port sits at phi0 + port_offset[f].  The context caches
// those fixed per-feature offsets.
struct RotationContext {
    std::vector<int> order;            // locked cyclic order, feature indices
    std::vector<double> port_offset;   // by feature index, in [0, 2pi)
    std::vector<double> start_offset;  // label start offset, by feature index
    std::vector<double> extent;        // label extent, by feature index
    int innermost = 0;
};

RotationContext make_rotation_context(const Instance& instance);

// Places every label and leader for the given rotation.  The innermost leader
// takes the requested direction; every other leader takes the unique direction
// whose orbital arc avoids the innermost leader's radial segment.  Crossings
// may exist; feasibility is the caller's job.
Labeling derive_configuration(const Instance& instance, double phi0,
                              LeaderDirection innermost_direction,
                              const Policy& policy = {});

// The closed set of rotations phi0 for which the leaders of features i and j
// do not cross: critical angles where the pair's status can flip are
// collected, each gap between consecutive criticals is classified by probing
// its midpoint, and free gaps are merged.  Expected to be a single arc (or
// empty, or everything); if not, *single_arc is set false.
CircularSet admissible_range(const Instance& instance, int i, int j,
                             LeaderDirection innermost_direction,
                             const Policy& policy = {},
                             bool* single_arc = nullptr);

// Exact solver for free port positions with a locked label order: intersects
// all pairwise admissible rotation ranges, then minimizes the piecewise-linear
// total leader length over breakpoints and range endpoints, for both innermost
// directions.  Ties break toward the smallest phi0, then the counterclockwise
// innermost leader.
SolveReport solve_locked_order(const Instance& instance, const Policy& policy = {});

}  // namespace orbital
