#pragma once

#include <vector>

namespace orbital {

// Dense row-major cost matrix for the assignment subproblems.
struct CostMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> cells;

    CostMatrix() = default;
    CostMatrix(int r, int c, double fill = 0.0)
        : rows(r), cols(c), cells(static_cast<size_t>(r) * c, fill) {}

    double& at(int r, int c) { return cells[static_cast<size_t>(r) * cols + c]; }
    double at(int r, int c) const { return cells[static_cast<size_t>(r) * cols + c]; }
};

struct AssignmentResult {
    std::vector<int> column_of_row;  // one distinct column per row
    double cost = 0.0;
};

// Minimum-cost assignment of every row to a distinct column (rows <= cols),
// shortest-augmenting-path with dual potentials.  Deterministic: among
// minimum-cost solutions the lexicographically smallest column sequence is
// returned whenever the tie graph is small enough to canonicalize cheaply;
// otherwise the (still deterministic) first optimum is kept.
AssignmentResult min_cost_assignment(const CostMatrix& cost);

}  // namespace orbital
