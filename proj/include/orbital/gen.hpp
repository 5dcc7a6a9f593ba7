#pragma once

#include <cstdint>
#include <random>

#include "orbital/instance.hpp"

namespace orbital {

/// Deterministic helpers on top of mt19937_64.  The standard distributions
/// are implementation-defined, so uniform draws are derived from raw 64-bit
/// words directly; generated instances are bit-identical across platforms.
struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    double uniform01() {
        return static_cast<double>(engine() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    double angle() { return normalize_angle(kTwoPi * uniform01()); }
    int below(int n) {  // uniform in [0, n)
        return static_cast<int>(engine() % static_cast<std::uint64_t>(n));
    }
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
            std::swap(v[i], v[below(i + 1)]);
    }
};

enum class RadiusDistribution { Stratified, UniformDistinct };

/// Random instance: n features with distinct radii (a shuffled stratified
/// grid R*j/(n+1) by default) and uniform random angles.  Uniform sizes give
/// unit labels (C = n); non-uniform sizes draw integer lengths in [1, 9].
/// Locked order is a uniform random cyclic order; locked ports are 2n
/// equally spaced candidates at a random rotation.
Instance gen_random(std::uint64_t seed, int n, const Variant& variant,
                    RadiusDistribution radii = RadiusDistribution::Stratified);

/// PARTITION reduction gadget built from positive integers X (sum S):
/// n = |X| features stacked on the positive y-axis within 1/(4*pi*n) of the
/// center, plus two blocker features near the top and bottom of the
/// boundary, each with a unit label.  C = S + 2.
struct GadgetSpec {
    std::vector<long long> xs;       // the multiset X
    long long sum = 0;               // S
    double circumference = 0.0;      // S + 2
    double blocker_radius = 0.0;     // primary blocker radius (> (S+2)/(4*pi))
    double threshold = 0.0;          // k = 1/2 + sum of radial leader parts
};

/// Build the gadget instance.  The decision threshold is
/// k = 1/2 + sum over all features of (R - r): total leader length < k
/// iff X splits into two halves of equal sum.  `ratio_mode` must keep the
/// two blocker ratios equal; UniformLocked(0.5) is the default.
std::pair<Instance, GadgetSpec> gen_partition_gadget(
    const std::vector<long long>& xs,
    RatioMode ratio_mode = RatioMode::UniformLocked);

}  // namespace orbital
