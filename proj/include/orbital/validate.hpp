#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbital/instance.hpp"

namespace orbital {

struct ValidationReport {
    struct Item {
        std::string code;     // stable machine-readable kind, e.g. "crossing"
        std::string message;  // human-readable detail
    };
    std::vector<Item> violations;
    std::vector<std::string> notes;  // diagnostics that do not affect feasibility

    bool ok() const { return violations.empty(); }
    int count(const std::string& code) const {
        int c = 0;
        for (const auto& v : violations)
            if (v.code == code) ++c;
        return c;
    }
    void add(std::string code, std::string message) {
        violations.push_back({std::move(code), std::move(message)});
    }
};

/// Structural checks on an instance: positive label lengths summing to the
/// circumference, radii within the disk, locked-mode data present and sane.
/// Strict policy reports duplicate radii ("duplicate-radii").
ValidationReport validate_instance(const Instance& instance, const Policy& policy = {});

/// Full feasibility check of a labeling against its instance. Violation
/// codes: "structure", "tiling", "label-length", "ratio", "order",
/// "candidate", "crossing", "port-mismatch", "leader-geometry", "objective".
/// For locked-ports/free-order variants, label-arc tiling is reported as a
/// note instead of a violation (the matching model places labels around
/// ports without a tiling rule).  Never throws; degenerate geometry under
/// the strict policy is reported and then evaluated leniently.
ValidationReport validate_labeling(const Labeling& labeling, const Instance& instance,
                                   const Policy& policy = {});

/// An angle whose radial segment from center to boundary crosses no leader,
/// if one exists.  Scans midpoints between consecutive port and feature
/// angles; in a crossing-free labeling the innermost leader's port is always
/// such a witness, so this returns a value for every feasible labeling.
std::optional<double> find_splitting_witness(const Labeling& labeling,
                                             const Instance& instance,
                                             const Policy& policy = {});

}  // namespace orbital
