#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "orbital/errors.hpp"
#include "orbital/gen.hpp"
#include "orbital/oracle.hpp"
#include "orbital/validate.hpp"
#include "support.hpp"

using namespace orbital;
using testsupport::make_instance;

TEST_CASE("locked-order oracle on the worked example") {
    Variant v;
    Instance inst = make_instance(kTwoPi, {{0.2, 0.0}, {0.6, kPi}}, v);
    OracleResult res = oracle_locked_order_free(inst);
    REQUIRE(res.status == SolveStatus::Optimal);
    CHECK(res.objective == doctest::Approx(1.2));
    REQUIRE(res.labeling.has_value());
    CHECK(validate_labeling(*res.labeling, inst).ok());
    CHECK(res.search_space > 0);

    SUBCASE("extra grid rotations enlarge the search but not the optimum") {
        OracleResult fine = oracle_locked_order_free(inst, 500);
        CHECK(fine.grid_resolution == 500);
        CHECK(fine.search_space > res.search_space);
        CHECK(fine.objective == doctest::Approx(res.objective));
    }
}

TEST_CASE("oracles refuse oversized inputs instead of sampling") {
    Variant v;
    Instance big = gen_random(1, 9, v);
    CHECK_THROWS_AS(oracle_locked_order_free(big), SizeRefusal);
    big.variant.order = OrderMode::Free;
    big.order.clear();
    CHECK_THROWS_AS(oracle_free_order(big), SizeRefusal);

    // Locked candidates: the arrangement count guard.
    Variant pv;
    pv.ports = PortMode::Locked;
    pv.order = OrderMode::Free;
    Instance wide = gen_random(2, 8, pv);  // 16 candidates, 8 features
    CHECK_THROWS_AS(oracle_locked_candidates(wide), SizeRefusal);
}

TEST_CASE("free-order oracle is never worse than the locked-order oracle") {
    for (int seed = 0; seed < 12; ++seed) {
        Variant v;
        v.order = OrderMode::Locked;
        Instance inst = gen_random(14000 + seed, 2 + seed % 4, v);
        OracleResult locked = oracle_locked_order_free(inst);
        Instance f = inst;
        f.variant.order = OrderMode::Free;
        f.order.clear();
        OracleResult free_res = oracle_free_order(f);
        REQUIRE(free_res.status == SolveStatus::Optimal);
        if (locked.status == SolveStatus::Optimal)
            CHECK(free_res.objective <= locked.objective + 1e-9);
        CHECK(validate_labeling(*free_res.labeling, f).ok());
    }
}

TEST_CASE("free-order oracle handles non-uniform label lengths") {
    Variant v;
    v.order = OrderMode::Free;
    v.sizes = SizeMode::NonUniform;
    Instance inst = testsupport::make_instance_sized(
        kTwoPi, {{0.2, 0.0}, {0.5, 2.0}, {0.7, 4.0}},
        {kPi, kPi / 2, kPi / 2}, v);
    OracleResult res = oracle_free_order(inst);
    REQUIRE(res.status == SolveStatus::Optimal);
    CHECK(validate_labeling(*res.labeling, inst).ok());
    CHECK(res.objective == doctest::Approx(total_leader_length(*res.labeling, inst)));
}

TEST_CASE("oracle ratio gates") {
    Variant v;
    v.ratios = RatioMode::NonUniformFree;
    Instance inst = make_instance(kTwoPi, {{0.2, 0.0}, {0.6, kPi}}, v);
    CHECK(oracle_locked_order_free(inst).status == SolveStatus::Unsupported);

    Variant v2;
    v2.ratios = RatioMode::UniformFree;
    v2.sizes = SizeMode::NonUniform;
    Instance inst2 = testsupport::make_instance_sized(
        kTwoPi, {{0.2, 0.0}, {0.6, kPi}}, {kPi / 2, 3 * kPi / 2}, v2);
    CHECK(oracle_locked_order_free(inst2).status == SolveStatus::Unsupported);
}

TEST_CASE("locked-candidate oracle agrees on tiny hand instances") {
    Variant v;
    v.ports = PortMode::Locked;
    v.order = OrderMode::Locked;
    v.k = 0.0;
    Instance inst = make_instance(kTwoPi, {{0.2, 0.0}, {0.6, kPi}}, v);
    inst.candidates = {0.0, kPi / 2, kPi, 3 * kPi / 2};
    OracleResult res = oracle_locked_candidates(inst);
    REQUIRE(res.status == SolveStatus::Optimal);
    CHECK(res.objective == doctest::Approx(1.2));

    SUBCASE("infeasible when the ring cannot host the rigid order") {
        Instance bad = inst;
        bad.candidates = {0.0, 2.0};
        OracleResult r = oracle_locked_candidates(bad);
        CHECK(r.status == SolveStatus::Infeasible);
    }
}

TEST_CASE("partition gadget: equal-split sets land under the threshold") {
    auto [yes_inst, yes_spec] = gen_partition_gadget({1, 1, 2});
    OracleResult yes = oracle_free_order(yes_inst);
    REQUIRE(yes.status == SolveStatus::Optimal);
    CHECK(yes.objective < yes_spec.threshold);
    CHECK(validate_labeling(*yes.labeling, yes_inst).ok());

    // An even-sum set with no equal split stays above the threshold.
    auto [no_inst, no_spec] = gen_partition_gadget({1, 1, 4});
    OracleResult no = oracle_free_order(no_inst);
    REQUIRE(no.status == SolveStatus::Optimal);
    CHECK(no.objective >= no_spec.threshold);
}

TEST_CASE("oracle objective equals its labeling's recomputed length") {
    for (int seed = 0; seed < 10; ++seed) {
        Variant v;
        Instance inst = gen_random(15000 + seed, 2 + seed % 5, v);
        OracleResult res = oracle_locked_order_free(inst);
        if (res.status != SolveStatus::Optimal) continue;
        CHECK(res.objective ==
              doctest::Approx(total_leader_length(*res.labeling, inst)));
    }
}
