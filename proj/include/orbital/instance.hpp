#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbital/geometry.hpp"

namespace orbital {

enum class PortMode { Free, Locked };
enum class OrderMode { Free, Locked };
enum class SizeMode { Uniform, NonUniform };

/// Ratio handling: the ratio places each port within its label arc
/// (0 = arc start, 1 = arc end, measured counter-clockwise).
enum class RatioMode { UniformLocked, UniformFree, NonUniformLocked, NonUniformFree };

struct Variant {
    PortMode ports = PortMode::Free;
    OrderMode order = OrderMode::Locked;
    SizeMode sizes = SizeMode::Uniform;
    RatioMode ratios = RatioMode::UniformLocked;
    double k = 0.5;          // ratio value for UniformLocked
    std::vector<double> K;   // per-feature ratios for NonUniformLocked
};

std::string to_string(const Variant& v);

struct Feature {
    std::string id;
    PolarPoint position;
    double label_length = 0.0;
};

/// A problem instance.  The disk is centered at the origin; its radius is
/// circumference / (2*pi) and the label lengths are expected to sum to the
/// circumference (validated, not assumed).
struct Instance {
    double circumference = 0.0;
    std::vector<Feature> features;
    Variant variant;
    std::vector<double> candidates;  // sorted port angles; used when ports are locked
    std::vector<int> order;          // cyclic label order as feature indices; used when order is locked

    double radius() const { return circumference / kTwoPi; }
    int size() const { return static_cast<int>(features.size()); }

    int index_of(const std::string& id) const;

    /// Index of the feature with minimal radius (smallest index on ties).
    int innermost() const;

    bool has_duplicate_radii(double tol) const;

    /// Resolved port ratio for a feature, applying the uniform-free
    /// reduction (any common ratio is equivalent; 0 is used).
    double ratio_of(int feature_index) const;
};

/// Total leader length of a labeling against its instance.
double total_leader_length(const Labeling& labeling, const Instance& instance);

}  // namespace orbital
