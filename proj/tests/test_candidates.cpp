#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "orbital/errors.hpp"
#include "orbital/gen.hpp"
#include "orbital/oracle.hpp"
#include "orbital/solver_candidates.hpp"
#include "orbital/validate.hpp"
#include "support.hpp"

using namespace orbital;
using testsupport::make_instance;

namespace {

Instance locked_ports_instance(OrderMode order, std::vector<double> candidates) {
    Variant v;
    v.ports = PortMode::Locked;
    v.order = order;
    Instance inst = make_instance(kTwoPi, {{0.2, 0.0}, {0.6, kPi}}, v);
    inst.candidates = std::move(candidates);
    return inst;
}

}  // namespace

TEST_CASE("candidate index: sorting, deduplication, ring detection") {
    CandidateIndex idx = CandidateIndex::build({3.0, 1.0, 1.0 + 1e-12, 5.0}, 1e-9);
    REQUIRE(idx.angles.size() == 3);
    CHECK(std::is_sorted(idx.angles.begin(), idx.angles.end()));
    CHECK(idx.find(1.0, 1e-9) == 0);
    CHECK(idx.find(3.0, 1e-9) == 1);
    CHECK(idx.find(2.0, 1e-9) == -1);
    CHECK_FALSE(idx.full_ring);

    CandidateIndex ring = CandidateIndex::build(
        {0.25, 0.25 + kPi / 2, 0.25 + kPi, 0.25 + 3 * kPi / 2}, 1e-9);
    CHECK(ring.full_ring);
    CHECK(ring.spacing == doctest::Approx(kPi / 2));
    // Wraparound hit.
    CandidateIndex w = CandidateIndex::build({1e-12, 2.0}, 1e-9);
    CHECK(w.find(kTwoPi - 1e-11, 1e-9) == 0);
}

TEST_CASE("rigid solver: frozen examples") {
    SUBCASE("a ring containing both feature rays reaches the radial optimum") {
        Variant v;
        v.ports = PortMode::Locked;
        v.order = OrderMode::Locked;
        v.k = 0.0;  // ports at label starts
        Instance inst = locked_ports_instance(OrderMode::Locked,
                                              {0.0, kPi / 2, kPi, 3 * kPi / 2});
        inst.variant = v;
        SolveReport rep = solve_locked_order_locked_ports(inst);
        REQUIRE(rep.status == SolveStatus::Optimal);
        CHECK(rep.labeling->objective == doctest::Approx(1.2));
        CHECK(validate_labeling(*rep.labeling, inst).ok());
    }
    SUBCASE("a shifted two-candidate set forces orbital travel") {
        Variant v;
        v.ports = PortMode::Locked;
        v.order = OrderMode::Locked;
        v.k = 0.0;
        Instance inst =
            locked_ports_instance(OrderMode::Locked, {kPi / 3, kPi / 3 + kPi});
        inst.variant = v;
        SolveReport rep = solve_locked_order_locked_ports(inst);
        REQUIRE(rep.status == SolveStatus::Optimal);
        // Best rotation puts the second feature's leader on the shorter arc:
        // 1.2 + (0.2 + 0.6) * (pi/3).
        CHECK(rep.labeling->objective == doctest::Approx(1.2 + 0.8 * kPi / 3));
        CHECK(validate_labeling(*rep.labeling, inst).ok());
    }
    SUBCASE("fewer candidates than features is infeasible") {
        Instance inst = locked_ports_instance(OrderMode::Locked, {1.0});
        SolveReport rep = solve_locked_order_locked_ports(inst);
        CHECK(rep.status == SolveStatus::Infeasible);
    }
    SUBCASE("derived ports off the candidate set are rejected") {
        // Two candidates that are not antipodal cannot host two half-circle
        // labels rigidly.
        Instance inst = locked_ports_instance(OrderMode::Locked, {0.0, 2.0});
        SolveReport rep = solve_locked_order_locked_ports(inst);
        CHECK(rep.status == SolveStatus::Infeasible);
        CHECK(!rep.notes.empty());  // rejection reasons are reported
    }
}

TEST_CASE("rigid solver matches the exhaustive oracle") {
    Policy pol;
    int optimal_seen = 0;
    for (int seed = 0; seed < 40; ++seed) {
        Variant v;
        v.ports = PortMode::Locked;
        v.order = OrderMode::Locked;
        Instance inst = gen_random(11000 + seed, 2 + seed % 4, v);
        SolveReport fast = solve_locked_order_locked_ports(inst, pol);
        OracleResult slow = oracle_locked_candidates(inst, pol);
        CAPTURE(seed);
        REQUIRE(fast.status == slow.status);
        if (fast.status == SolveStatus::Optimal) {
            ++optimal_seen;
            CHECK(fast.labeling->objective ==
                  doctest::Approx(slow.objective).epsilon(1e-6));
            CHECK(validate_labeling(*fast.labeling, inst, pol).ok());
        }
    }
    CHECK(optimal_seen >= 5);
}

TEST_CASE("free-order matching over candidates: basics") {
    Variant v;
    v.ports = PortMode::Locked;
    v.order = OrderMode::Free;
    Instance inst = locked_ports_instance(OrderMode::Free,
                                          {0.0, kPi / 2, kPi, 3 * kPi / 2});
    inst.variant = v;
    SolveReport rep = solve_free_order_locked_ports(inst);
    REQUIRE(rep.status == SolveStatus::Optimal);
    // Both features can take their own ray: purely radial again.
    CHECK(rep.labeling->objective == doctest::Approx(1.2));
    auto check = validate_labeling(*rep.labeling, inst);
    CHECK(check.ok());

    SUBCASE("more features than candidates is infeasible") {
        Instance small = locked_ports_instance(OrderMode::Free, {1.0});
        small.variant = v;
        SolveReport r = solve_free_order_locked_ports(small);
        CHECK(r.status == SolveStatus::Infeasible);
    }
    SUBCASE("objective equals the sum of chosen edge weights") {
        // Two candidates at pi/3 offsets from the rays.
        Instance off = locked_ports_instance(OrderMode::Free,
                                             {kPi / 3, kPi / 3 + kPi});
        off.variant = v;
        SolveReport r = solve_free_order_locked_ports(off);
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.labeling->objective == doctest::Approx(1.2 + 0.8 * kPi / 3));
    }
}

TEST_CASE("free-order matching over candidates matches the oracle") {
    Policy pol;
    for (int seed = 0; seed < 40; ++seed) {
        Variant v;
        v.ports = PortMode::Locked;
        v.order = OrderMode::Free;
        Instance inst = gen_random(12000 + seed, 2 + seed % 4, v);
        SolveReport fast = solve_free_order_locked_ports(inst, pol);
        OracleResult slow = oracle_locked_candidates(inst, pol);
        CAPTURE(seed);
        REQUIRE(fast.status == slow.status);
        if (fast.status == SolveStatus::Optimal) {
            CHECK(fast.labeling->objective ==
                  doctest::Approx(slow.objective).epsilon(1e-6));
            auto check = validate_labeling(*fast.labeling, inst, pol);
            CAPTURE(check.violations.empty() ? std::string("none")
                                             : check.violations.front().message);
            CHECK(check.ok());
        }
    }
}

TEST_CASE("matchings are identical for every shared ratio value") {
    for (int seed = 0; seed < 10; ++seed) {
        Variant v;
        v.ports = PortMode::Locked;
        v.order = OrderMode::Free;
        Instance base = gen_random(13000 + seed, 2 + seed % 5, v);
        SolveReport ref;
        for (int ki = 0; ki < 4; ++ki) {
            const double ks[] = {0.0, 0.25, 0.5, 1.0};
            Instance inst = base;
            inst.variant.k = ks[ki];
            SolveReport rep = solve_free_order_locked_ports(inst);
            REQUIRE(rep.status == SolveStatus::Optimal);
            if (ki == 0) {
                ref = rep;
                continue;
            }
            CHECK(rep.labeling->objective ==
                  doctest::Approx(ref.labeling->objective).epsilon(1e-12));
            for (size_t i = 0; i < rep.labeling->leaders.size(); ++i)
                CHECK(rep.labeling->leaders[i].port ==
                      doctest::Approx(ref.labeling->leaders[i].port));
        }
    }
}
