#include "orbital/instance.hpp"

#include <algorithm>
#include <cmath>

namespace orbital {

std::string to_string(const Variant& v) {
    std::string s;
    s += (v.ports == PortMode::Free) ? "ports=free" : "ports=locked";
    s += (v.order == OrderMode::Free) ? ",order=free" : ",order=locked";
    s += (v.sizes == SizeMode::Uniform) ? ",sizes=uniform" : ",sizes=nonuniform";
    switch (v.ratios) {
        case RatioMode::UniformLocked:
            s += ",ratios=uniform-locked,k=" + std::to_string(v.k);
            break;
        case RatioMode::UniformFree: s += ",ratios=uniform-free"; break;
        case RatioMode::NonUniformLocked: s += ",ratios=nonuniform-locked"; break;
        case RatioMode::NonUniformFree: s += ",ratios=nonuniform-free"; break;
    }
    return s;
}

int Instance::index_of(const std::string& id) const {
    for (int i = 0; i < size(); ++i)
        if (features[i].id == id) return i;
    return -1;
}

int Instance::innermost() const {
    if (features.empty()) throw InvalidArgument("instance has no features");
    int best = 0;
    for (int i = 1; i < size(); ++i)
        if (features[i].position.radius < features[best].position.radius) best = i;
    return best;
}

bool Instance::has_duplicate_radii(double tol) const {
    std::vector<double> radii;
    radii.reserve(features.size());
    for (const auto& f : features) radii.push_back(f.position.radius);
    std::sort(radii.begin(), radii.end());
    for (size_t i = 1; i < radii.size(); ++i)
        if (radii[i] - radii[i - 1] <= tol) return true;
    return false;
}

double Instance::ratio_of(int feature_index) const {
    switch (variant.ratios) {
        case RatioMode::UniformLocked: return variant.k;
        case RatioMode::UniformFree: return 0.0;
        case RatioMode::NonUniformLocked:
            if (feature_index < 0 || feature_index >= static_cast<int>(variant.K.size()))
                throw InvalidArgument("ratio vector does not cover feature index");
            return variant.K[feature_index];
        case RatioMode::NonUniformFree:
            throw InvalidArgument("non-uniform free ratios have no resolved value");
    }
    return 0.0;
}

double total_leader_length(const Labeling& labeling, const Instance& instance) {
    if (static_cast<int>(labeling.leaders.size()) != instance.size())
        throw InvalidArgument("labeling does not cover every feature");
    double total = 0.0;
    for (const auto& l : labeling.leaders) {
        if (l.feature < 0 || l.feature >= instance.size())
            throw InvalidArgument("leader references unknown feature");
        total += leader_length(instance.features[l.feature].position,
                               l.orbital_span, instance.circumference);
    }
    return total;
}

}  // namespace orbital
