#include "orbital/dispatch.hpp"

#include <utility>

#include "orbital/oracle.hpp"
#include "orbital/solver_candidates.hpp"
#include "orbital/solver_matching.hpp"
#include "orbital/solver_rotation.hpp"

namespace orbital {

namespace {

// Map an exhaustive-search result onto the solver report shape so the
// fallback path is indistinguishable from a dedicated solver to callers.
SolveReport report_from_oracle(OracleResult&& res) {
    SolveReport rep;
    rep.status = res.status;
    rep.message = std::move(res.message);
    if (res.labeling) rep.labeling = std::move(res.labeling);
    if (rep.status != SolveStatus::Unsupported) {
        rep.notes.push_back(
            "solved by exhaustive search over label orders (small instance fallback)");
    }
    return rep;
}

}  // namespace

SolveReport solve(const Instance& instance, const Policy& policy) {
    const Variant& v = instance.variant;

    if (v.ports == PortMode::Free && v.order == OrderMode::Locked) {
        return solve_locked_order(instance, policy);
    }
    if (v.ports == PortMode::Locked && v.order == OrderMode::Locked) {
        return solve_locked_order_locked_ports(instance, policy);
    }
    if (v.ports == PortMode::Locked && v.order == OrderMode::Free) {
        return solve_free_order_locked_ports(instance, policy);
    }

    // Free ports, free order.
    if (v.sizes == SizeMode::Uniform &&
        (v.ratios == RatioMode::UniformLocked || v.ratios == RatioMode::UniformFree)) {
        return solve_free_order_uniform(instance, policy);
    }
    if (instance.size() <= 8) {
        return report_from_oracle(oracle_free_order(instance, policy));
    }
    if (v.sizes == SizeMode::NonUniform) {
        return SolveReport::unsupported(
            "free order with non-uniform label lengths is NP-hard; exact solving "
            "is limited to at most 8 features");
    }
    return SolveReport::unsupported(
        "no exact polynomial algorithm is known for this variant; exact solving "
        "is limited to at most 8 features");
}

}  // namespace orbital
