#pragma once

#include "orbital/assignment.hpp"
#include "orbital/instance.hpp"
#include "orbital/solve.hpp"

namespace orbital {

// Candidate boundary points for the innermost feature's port: the boundary
// hits of the line through the center and each feature (both sides), each
// seeding a grid of ports_per_anchor equally spaced ports that includes the
// anchor itself.
struct AnchorSet {
    std::vector<double> anchors;  // sorted ascending, deduplicated
    int ports_per_anchor = 0;
};

AnchorSet innermost_port_candidates(const Instance& instance, const Policy& policy = {});

// One cut subproblem: the circle is cut along the innermost leader's radial
// segment at xi1, angles become offsets from the cut, and every non-innermost
// feature/port pairing gets the cost of the unique leader that stays off the
// cut.  Rows are features in index order (innermost excluded); columns are the
// remaining ports by increasing offset.
struct CutReduction {
    CostMatrix matrix;
    std::vector<int> row_feature;
    std::vector<double> row_offset;
    std::vector<double> col_port;    // absolute angles
    std::vector<double> col_offset;  // offsets from the cut, in (0, 2pi)
};

CutReduction reduce_to_assignment(const Instance& instance, double xi1,
                                  const std::vector<double>& port_set,
                                  const Policy& policy = {});

// Exact solver for free ports and free order with uniform label lengths and a
// shared port ratio: try every anchor, every innermost port on its grid and
// both innermost directions; solve the remaining feature-to-port pairing as a
// minimum-cost assignment; keep the global best.  Ties break toward the
// smallest (anchor angle, innermost port angle), counterclockwise first.
SolveReport solve_free_order_uniform(const Instance& instance, const Policy& policy = {});

}  // namespace orbital
