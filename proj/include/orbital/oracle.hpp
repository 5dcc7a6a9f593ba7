#pragma once

#include <optional>
#include <string>

#include "orbital/instance.hpp"
#include "orbital/solve.hpp"

namespace orbital {

// Result of a brute-force reference solve.  Oracles enumerate exhaustively
// and refuse oversized inputs rather than sample.
struct OracleResult {
    SolveStatus status = SolveStatus::Infeasible;
    double objective = 0.0;
    std::optional<Labeling> labeling;
    long long search_space = 0;  // configurations actually evaluated
    int grid_resolution = 0;     // extra uniformly spaced rotations probed
    std::string message;
};

// Locked order, free ports: evaluates every analytic event rotation (leader
// radial alignments, direction flips, pairwise touching configurations) plus
// extra_grid uniform rotations, for both innermost directions, keeping the
// best crossing-free configuration.  Refuses more than 8 features.
OracleResult oracle_locked_order_free(const Instance& instance, int extra_grid = 0,
                                      const Policy& policy = {});

// Free order, free ports: runs the locked-order evaluation over all (n-1)!
// cyclic label orders.  Handles non-uniform label lengths.  Refuses more than
// 8 features.
OracleResult oracle_free_order(const Instance& instance, const Policy& policy = {});

// Locked ports: enumerates every injective feature-to-candidate assignment,
// with leader directions chosen exhaustively where the cheap choice crosses.
// Refuses when (|C| choose n) * n! exceeds 10^7.
OracleResult oracle_locked_candidates(const Instance& instance,
                                      const Policy& policy = {});

}  // namespace orbital
