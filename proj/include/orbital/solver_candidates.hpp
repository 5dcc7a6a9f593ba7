#pragma once

#include "orbital/instance.hpp"
#include "orbital/solve.hpp"

namespace orbital {

// Sorted candidate port angles with tolerance-aware membership queries and a
// fast path for a full equally spaced ring.
struct CandidateIndex {
    std::vector<double> angles;  // sorted ascending, deduplicated
    bool full_ring = false;      // consecutive gaps all equal 2pi/|angles|
    double spacing = 0.0;

    static CandidateIndex build(const std::vector<double>& candidates, double tol);
    int find(double angle, double tol) const;  // matching index or -1
};

// Locked ports + locked order: the first label's port must sit on a
// candidate, which pins the whole configuration; try every candidate and both
// innermost directions, require every derived port to coincide with a
// candidate and all leaders to be pairwise crossing-free, keep the shortest.
SolveReport solve_locked_order_locked_ports(const Instance& instance,
                                            const Policy& policy = {});

// Locked ports + free order with uniform label lengths and a shared ratio:
// minimum-weight feature-to-candidate matching, folding each edge's leader
// direction into its weight (counterclockwise on ties).
SolveReport solve_free_order_locked_ports(const Instance& instance,
                                          const Policy& policy = {});

}  // namespace orbital
