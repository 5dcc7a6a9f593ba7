#include "orbital/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orbital/errors.hpp"

namespace orbital {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Guards for the lexicographic tie canonicalization: beyond these sizes the
// rewiring pass could dominate the solve itself, so we keep the first optimum.
constexpr int kCanonMaxRows = 256;
constexpr int kCanonMaxEdgesPerRow = 16;

double exact_cost(const CostMatrix& cost, const std::vector<int>& col_of_row) {
    double total = 0.0;
    for (int i = 0; i < cost.rows; ++i) total += cost.at(i, col_of_row[i]);
    return total;
}

}  // namespace

AssignmentResult min_cost_assignment(const CostMatrix& cost) {
    const int n = cost.rows;
    const int m = cost.cols;
    if (n == 0) return {};
    if (n > m)
        throw InvalidArgument("assignment needs at least as many columns as rows");
    for (double w : cost.cells)
        if (!std::isfinite(w)) throw InvalidArgument("assignment costs must be finite");

    // Shortest augmenting paths with dual potentials.  Columns are 1-indexed;
    // column 0 is the virtual start whose "matched row" is the row being added.
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1, 0.0);
    std::vector<int> row_of_col(m + 1, 0), way(m + 1, 0);
    std::vector<char> used(m + 1, 0);
    for (int i = 1; i <= n; ++i) {
        row_of_col[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), kInf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            int i0 = row_of_col[j0], j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= m; ++j) {
                if (used[j]) continue;
                double cur = cost.at(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[row_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (row_of_col[j0] != 0);
        do {
            int j1 = way[j0];
            row_of_col[j0] = row_of_col[j1];
            j0 = j1;
        } while (j0);
    }

    AssignmentResult res;
    res.column_of_row.assign(n, -1);
    for (int j = 1; j <= m; ++j)
        if (row_of_col[j] > 0) res.column_of_row[row_of_col[j] - 1] = j - 1;
    res.cost = exact_cost(cost, res.column_of_row);

    if (n > kCanonMaxRows) return res;

    double scale = 1.0;
    for (double w : cost.cells) scale = std::max(scale, std::abs(w));
    const double tie_tol = 1e-9 * scale;

    // Collect zero-reduced-cost edges: every minimum-cost assignment lives on
    // them.  A dense tie graph means canonicalization would be quadratic in
    // the edge count, so bail out and keep the computed optimum.
    std::vector<std::vector<int>> tight(n);
    size_t edges = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j)
            if (cost.at(i, j) - u[i + 1] - v[j + 1] <= tie_tol) {
                tight[i].push_back(j);
                ++edges;
            }
        if (edges > static_cast<size_t>(kCanonMaxEdgesPerRow) * n) return res;
    }

    std::vector<int> match_col = res.column_of_row;
    std::vector<int> match_row(m, -1);
    for (int i = 0; i < n; ++i) match_row[match_col[i]] = i;
    std::vector<char> frozen(m, 0);
    std::vector<char> vis(m, 0);

    auto augment = [&](auto&& self, int row) -> bool {
        for (int j : tight[row]) {
            if (frozen[j] || vis[j]) continue;
            vis[j] = 1;
            if (match_row[j] == -1 || self(self, match_row[j])) {
                match_row[j] = row;
                match_col[row] = j;
                return true;
            }
        }
        return false;
    };

    // Fix rows in order; for each, try to steer it to the smallest tight
    // column that still leaves the remaining rows matchable.
    for (int r = 0; r < n; ++r) {
        for (int j : tight[r]) {
            if (j >= match_col[r]) break;  // current column already minimal
            if (frozen[j]) continue;
            int c0 = match_col[r];
            int displaced = match_row[j];
            match_col[r] = j;
            match_row[j] = r;
            match_row[c0] = -1;
            frozen[j] = 1;
            bool ok = true;
            if (displaced != -1) {
                std::fill(vis.begin(), vis.end(), 0);
                ok = augment(augment, displaced);
            }
            if (ok) break;
            frozen[j] = 0;
            match_col[r] = c0;
            match_row[c0] = r;
            match_row[j] = displaced;
        }
        frozen[match_col[r]] = 1;
    }

    // With more columns than rows a tight-edge rewiring can in principle drop
    // a column the duals priced below zero; verify and revert if so.
    double canon = exact_cost(cost, match_col);
    if (canon <= res.cost + tie_tol * (n + 1)) {
        res.column_of_row = match_col;
        res.cost = canon;
    }
    return res;
}

}  // namespace orbital
