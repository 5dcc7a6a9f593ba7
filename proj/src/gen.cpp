#include "orbital/gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace orbital {

Instance gen_random(std::uint64_t seed, int n, const Variant& variant,
                    RadiusDistribution radii) {
    if (n < 1) throw InvalidArgument("instance needs at least one feature");
    Rng rng(seed);
    Instance inst;
    inst.variant = variant;

    // Label lengths first: they fix the circumference and disk radius.
    std::vector<double> lambdas(n, 1.0);
    if (variant.sizes == SizeMode::NonUniform) {
        for (double& l : lambdas) l = 1.0 + rng.below(9);
    }
    inst.circumference = std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
    double R = inst.radius();

    std::vector<double> radius_pool(n);
    if (radii == RadiusDistribution::Stratified) {
        for (int j = 0; j < n; ++j) radius_pool[j] = R * (j + 1) / (n + 1);
    } else {
        for (int j = 0; j < n; ++j) {
            for (;;) {
                double r = rng.uniform(0.05 * R, 0.95 * R);
                bool clash = false;
                for (int m = 0; m < j; ++m)
                    if (std::abs(radius_pool[m] - r) < 1e-3 * R) clash = true;
                if (!clash) {
                    radius_pool[j] = r;
                    break;
                }
            }
        }
    }
    rng.shuffle(radius_pool);

    for (int i = 0; i < n; ++i) {
        Feature f;
        f.id = "p" + std::to_string(i + 1);
        f.position.radius = radius_pool[i];
        f.position.angle = rng.angle();
        f.label_length = lambdas[i];
        inst.features.push_back(std::move(f));
    }

    if (variant.ratios == RatioMode::NonUniformLocked && inst.variant.K.empty()) {
        inst.variant.K.resize(n);
        for (double& k : inst.variant.K) k = rng.uniform(0.0, 1.0);
    }

    if (variant.order == OrderMode::Locked) {
        inst.order.resize(n);
        std::iota(inst.order.begin(), inst.order.end(), 0);
        rng.shuffle(inst.order);
    }

    if (variant.ports == PortMode::Locked) {
        int m = std::max(n, 2 * n);
        double rot = rng.angle();
        for (int j = 0; j < m; ++j)
            inst.candidates.push_back(normalize_angle(rot + kTwoPi * j / m));
        std::sort(inst.candidates.begin(), inst.candidates.end());
    }
    return inst;
}

std::pair<Instance, GadgetSpec> gen_partition_gadget(
    const std::vector<long long>& xs, RatioMode ratio_mode) {
    if (xs.empty()) throw InvalidArgument("gadget needs a non-empty integer set");
    for (long long x : xs)
        if (x <= 0) throw InvalidArgument("gadget integers must be positive");
    if (ratio_mode == RatioMode::NonUniformFree)
        throw InvalidArgument("gadget blocker ratios must be pinned equal");

    GadgetSpec spec;
    spec.xs = xs;
    spec.sum = std::accumulate(xs.begin(), xs.end(), 0LL);
    const long long n = static_cast<long long>(xs.size());
    spec.circumference = static_cast<double>(spec.sum + 2);
    const double R = spec.circumference / kTwoPi;
    const double base = spec.circumference / (2.0 * kTwoPi);  // (S+2)/(4*pi)

    Instance inst;
    inst.circumference = spec.circumference;
    inst.variant.ports = PortMode::Free;
    inst.variant.order = OrderMode::Free;
    inst.variant.sizes = SizeMode::NonUniform;
    inst.variant.ratios = ratio_mode;
    inst.variant.k = 0.5;

    for (long long i = 1; i <= n; ++i) {
        Feature f;
        f.id = "p" + std::to_string(i);
        // Cartesian (0, i / (4*pi*n^2)): on the positive y-axis, well inside
        // every orbit that matters.
        f.position.radius = static_cast<double>(i) / (2.0 * kTwoPi * n * n);
        f.position.angle = kPi / 2.0;
        f.label_length = static_cast<double>(xs[i - 1]);
        inst.features.push_back(std::move(f));
    }
    // Blockers sit just outside base = C/(4*pi), staggered so all radii stay
    // distinct and strict validation passes.
    spec.blocker_radius = base + 1.0 / (4.0 * kTwoPi);
    Feature up;
    up.id = "pU";
    up.position = {spec.blocker_radius, kPi / 2.0};
    up.label_length = 1.0;
    Feature down;
    down.id = "pD";
    down.position = {base + 1.0 / (8.0 * kTwoPi), 3.0 * kPi / 2.0};
    down.label_length = 1.0;
    inst.features.push_back(std::move(up));
    inst.features.push_back(std::move(down));

    if (ratio_mode == RatioMode::NonUniformLocked) {
        // Arbitrary per-feature ratios; only the blockers must agree.
        for (long long i = 1; i <= n; ++i)
            inst.variant.K.push_back(static_cast<double>(i) / (n + 1));
        inst.variant.K.push_back(0.5);  // pU
        inst.variant.K.push_back(0.5);  // pD
    }

    double radial_sum = 0.0;
    for (const auto& f : inst.features) radial_sum += R - f.position.radius;
    spec.threshold = 0.5 + radial_sum;

    return {std::move(inst), std::move(spec)};
}

}  // namespace orbital
