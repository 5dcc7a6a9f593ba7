#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "orbital/cli.hpp"
#include "orbital/dispatch.hpp"
#include "orbital/errors.hpp"
#include "orbital/gen.hpp"
#include "orbital/io.hpp"
#include "orbital/render.hpp"
#include "support.hpp"

using namespace orbital;
using testsupport::count_occurrences;
using testsupport::make_instance;
using testsupport::xml_well_formed;

namespace {

struct CliRun {
    int exit_code = 0;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    CliRun r;
    r.exit_code = run_cli(args, in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

}  // namespace

TEST_CASE("svg: element counts for instance and labeling") {
    Variant v;
    Instance inst = gen_random(31, 5, v);
    std::string bare = render_svg(inst, nullptr);
    std::string why;
    CHECK(xml_well_formed(bare, &why));
    CAPTURE(why);
    CHECK(count_occurrences(bare, "class=\"boundary\"") == 1);
    CHECK(count_occurrences(bare, "class=\"feature\"") == 5);
    CHECK(count_occurrences(bare, "class=\"leader\"") == 0);

    SolveReport rep = solve(inst);
    REQUIRE(rep.status == SolveStatus::Optimal);
    std::string full = render_svg(inst, &*rep.labeling);
    CHECK(xml_well_formed(full, &why));
    CHECK(count_occurrences(full, "class=\"leader\"") == 5);
    CHECK(count_occurrences(full, "class=\"label-arc\"") == 5);
    CHECK(count_occurrences(full, "class=\"feature\"") == 5);

    SUBCASE("rendering twice is byte-identical") {
        CHECK(render_svg(inst, &*rep.labeling) == full);
    }
    SUBCASE("witness ray appears on demand") {
        RenderStyle style;
        style.draw_witness = true;
        std::string w = render_svg(inst, &*rep.labeling, style);
        CHECK(count_occurrences(w, "class=\"witness\"") == 1);
    }
}

TEST_CASE("svg: candidate ticks and full-circle labels") {
    Variant v;
    v.ports = PortMode::Locked;
    v.order = OrderMode::Free;
    Instance inst = gen_random(32, 4, v);
    std::string bare = render_svg(inst, nullptr);
    CHECK(count_occurrences(bare, "class=\"candidate-tick\"") == 8);

    // One feature: its label is the whole boundary -> drawn as a circle.
    Variant v1;
    Instance one = make_instance(kTwoPi, {{0.5, 1.0}}, v1);
    SolveReport rep = solve(one);
    REQUIRE(rep.status == SolveStatus::Optimal);
    std::string svg = render_svg(one, &*rep.labeling);
    CHECK(count_occurrences(svg, "<circle class=\"label-arc\"") == 1);
    std::string why;
    CHECK(xml_well_formed(svg, &why));
}

TEST_CASE("svg: dangling feature indices are rejected") {
    Variant v;
    Instance inst = make_instance(kTwoPi, {{0.2, 0.0}, {0.6, kPi}}, v);
    Labeling lab;
    lab.labels.push_back({7, 0.0, kPi, 0.0});
    CHECK_THROWS_AS(render_svg(inst, &lab), InvalidArgument);
}

TEST_CASE("cli: gen | solve | validate pipeline") {
    CliRun gen = run({"gen", "random", "--seed", "17", "--n", "5"});
    REQUIRE(gen.exit_code == 0);
    CliRun solve_run = run({"solve"}, gen.out);
    REQUIRE(solve_run.exit_code == 0);
    CHECK(solve_run.err.find("optimal") != std::string::npos);
    CliRun val = run({"validate"}, solve_run.out);
    CHECK(val.exit_code == 0);
    CHECK(val.out.find("valid") != std::string::npos);
}

TEST_CASE("cli: partition gadget pipeline prints the threshold") {
    CliRun gen = run({"gen", "partition", "--set", "1,1,2"});
    REQUIRE(gen.exit_code == 0);
    CHECK(gen.err.find("threshold") != std::string::npos);
    CliRun solve_run = run({"solve"}, gen.out);
    REQUIRE(solve_run.exit_code == 0);
    CliRun val = run({"validate"}, solve_run.out);
    CHECK(val.exit_code == 0);
}

TEST_CASE("cli: exit codes") {
    SUBCASE("usage errors are 64") {
        CHECK(run({"frobnicate"}).exit_code == 64);
        CHECK(run({"solve", "--no-such-flag"}).exit_code == 64);
        CHECK(run({"solve"}, "this is not json").exit_code == 64);
        CHECK(run({"gen", "partition", "--set", "1,x"}).exit_code == 64);
        CHECK(run({"solve", "--in", "/nonexistent/path.json"}).exit_code == 64);
    }
    SUBCASE("help is 0") {
        CHECK(run({"--help"}).exit_code == 0);
        CHECK(run({"solve", "--help"}).exit_code == 0);
    }
    SUBCASE("unsupported variants are 3") {
        CliRun gen = run({"gen", "random", "--seed", "3", "--n", "30",
                          "--variant", "sizes=nonuniform,order=free"});
        REQUIRE(gen.exit_code == 0);
        CliRun s = run({"solve"}, gen.out);
        CHECK(s.exit_code == 3);
        CHECK(s.err.find("NP-hard") != std::string::npos);
    }
    SUBCASE("infeasible instances are 2") {
        CliRun gen = run({"gen", "random", "--seed", "1", "--n", "2",
                          "--variant", "ports=locked,order=locked"});
        REQUIRE(gen.exit_code == 0);
        // Shrink the candidate set below n to force infeasibility.
        Instance inst = parse_instance(gen.out);
        inst.candidates.resize(1);
        CliRun s = run({"solve"}, serialize_instance(inst));
        CHECK(s.exit_code == 2);
    }
    SUBCASE("a corrupted labeling validates to 2") {
        CliRun gen = run({"gen", "random", "--seed", "17", "--n", "5"});
        CliRun s = run({"solve"}, gen.out);
        REQUIRE(s.exit_code == 0);
        auto [inst, lab] = parse_bundle(s.out);
        lab.leaders[2].port += 0.3;
        CliRun val = run({"validate"}, serialize_bundle(lab, inst));
        CHECK(val.exit_code == 2);
        CHECK(val.err.find("violation") != std::string::npos);
    }
    SUBCASE("oracle refusal is 3") {
        CliRun gen = run({"gen", "random", "--seed", "2", "--n", "9"});
        CliRun o = run({"oracle"}, gen.out);
        CHECK(o.exit_code == 3);
    }
}

TEST_CASE("cli: oracle agrees with solve") {
    CliRun gen = run({"gen", "random", "--seed", "21", "--n", "4"});
    CliRun s = run({"solve"}, gen.out);
    CliRun o = run({"oracle"}, gen.out);
    REQUIRE(s.exit_code == 0);
    REQUIRE(o.exit_code == 0);
    auto [si, sl] = parse_bundle(s.out);
    auto [oi, ol] = parse_bundle(o.out);
    CHECK(sl.objective == doctest::Approx(ol.objective).epsilon(1e-9));
    CHECK(o.err.find("search space") != std::string::npos);
}

TEST_CASE("cli: variant override changes the dispatched solver") {
    CliRun gen = run({"gen", "random", "--seed", "8", "--n", "4"});
    CliRun locked = run({"solve"}, gen.out);
    CliRun freed = run({"solve", "--variant", "order=free"}, gen.out);
    REQUIRE(locked.exit_code == 0);
    REQUIRE(freed.exit_code == 0);
    auto [li, ll] = parse_bundle(locked.out);
    auto [fi, fl] = parse_bundle(freed.out);
    CHECK(fl.objective <= ll.objective + 1e-9);
}

TEST_CASE("cli: render produces svg on stdout or file") {
    CliRun gen = run({"gen", "random", "--seed", "5", "--n", "3"});
    CliRun s = run({"solve"}, gen.out);
    CliRun witnessed = run({"render", "--witness"}, s.out);
    REQUIRE(witnessed.exit_code == 0);
    std::string why;
    CHECK(xml_well_formed(witnessed.out, &why));
    CAPTURE(why);
    CHECK(count_occurrences(witnessed.out, "class=\"leader\"") == 3);
    CHECK(count_occurrences(witnessed.out, "class=\"witness\"") == 1);

    CliRun r = run({"render"}, s.out);
    REQUIRE(r.exit_code == 0);
    CliRun rf = run({"render", "--out", "render_test_tmp.svg"}, s.out);
    REQUIRE(rf.exit_code == 0);
    std::ifstream f("render_test_tmp.svg");
    REQUIRE(f.good());
    std::string content((std::istreambuf_iterator<char>(f)),
                        std::istreambuf_iterator<char>());
    CHECK(content == r.out);
    std::remove("render_test_tmp.svg");
}

TEST_CASE("cli: validate with a separate instance file") {
    CliRun gen = run({"gen", "random", "--seed", "11", "--n", "4"});
    std::ofstream f("validate_test_instance.json");
    f << gen.out;
    f.close();
    CliRun s = run({"solve"}, gen.out);
    REQUIRE(s.exit_code == 0);
    auto [inst, lab] = parse_bundle(s.out);
    CliRun val = run({"validate", "--instance", "validate_test_instance.json"},
                     serialize_labeling(lab, inst));
    CHECK(val.exit_code == 0);
    std::remove("validate_test_instance.json");
}

TEST_CASE("cli: instance-only validate") {
    CliRun gen = run({"gen", "random", "--seed", "13", "--n", "3"});
    CliRun val = run({"validate"}, gen.out);
    CHECK(val.exit_code == 0);
    CHECK(val.out.find("valid instance") != std::string::npos);

    Instance inst = parse_instance(gen.out);
    inst.features[0].label_length *= 2.0;  // break the tiling sum
    CliRun bad = run({"validate"}, serialize_instance(inst));
    CHECK(bad.exit_code == 2);
}
