#include "orbital/cli.hpp"

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "orbital/dispatch.hpp"
#include "orbital/errors.hpp"
#include "orbital/gen.hpp"
#include "orbital/io.hpp"
#include "orbital/oracle.hpp"
#include "orbital/render.hpp"
#include "orbital/validate.hpp"

namespace orbital {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitUsage = 64;

std::string read_input(const std::string& path, std::istream& fallback) {
    if (path.empty() || path == "-") {
        return std::string(std::istreambuf_iterator<char>(fallback),
                           std::istreambuf_iterator<char>());
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot read input file: " + path);
    return std::string(std::istreambuf_iterator<char>(f),
                       std::istreambuf_iterator<char>());
}

void write_output(const std::string& path, std::ostream& fallback,
                  const std::string& text) {
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write output file: " + path);
    f << text;
}

void print_violations(const ValidationReport& report, std::ostream& err) {
    for (const auto& v : report.violations)
        err << "violation[" << v.code << "]: " << v.message << "\n";
    for (const auto& n : report.notes) err << "note: " << n << "\n";
}

// Options shared by the subcommands that read an instance.
struct CommonOpts {
    std::string in_path;
    std::string out_path;
    std::string variant_spec;
    double tolerance = -1.0;  // <0: keep default
    bool lenient = false;
    bool strict = false;  // redundant with the default; kept as an explicit flag

    Policy policy() const {
        Policy p;
        p.strict = !lenient;
        if (tolerance >= 0.0) p.eps_theta = tolerance;
        return p;
    }
};

void add_policy_flags(CLI::App* cmd, CommonOpts& opts) {
    auto* strict_flag = cmd->add_flag(
        "--strict", opts.strict, "refuse features on equal orbits (default)");
    cmd->add_flag("--lenient", opts.lenient,
                  "allow features on equal orbits (diagnostics instead of errors)")
        ->excludes(strict_flag);
    cmd->add_option("--tolerance", opts.tolerance,
                    "angular tolerance in radians (default 1e-9)")
        ->check(CLI::NonNegativeNumber);
}

Instance load_instance(const CommonOpts& opts, std::istream& in) {
    const std::string text = read_input(opts.in_path, in);
    Instance inst;
    if (document_has_instance(text) && document_has_labeling(text)) {
        inst = parse_bundle(text).first;
    } else {
        inst = parse_instance(text);
    }
    if (!opts.variant_spec.empty())
        inst.variant = parse_variant_spec(opts.variant_spec, inst.variant);
    return inst;
}

int do_solve(const CommonOpts& opts, std::istream& in, std::ostream& out,
             std::ostream& err) {
    const Instance inst = load_instance(opts, in);
    const Policy policy = opts.policy();

    ValidationReport pre = validate_instance(inst, policy);
    if (!pre.ok()) {
        print_violations(pre, err);
        err << "instance invalid; not solving\n";
        return kExitInfeasible;
    }

    SolveReport rep = solve(inst, policy);
    for (const auto& n : rep.notes) err << "note: " << n << "\n";
    switch (rep.status) {
        case SolveStatus::Optimal:
            write_output(opts.out_path, out, serialize_bundle(*rep.labeling, inst));
            err << "optimal: objective = " << format_number(rep.labeling->objective)
                << "\n";
            return kExitOk;
        case SolveStatus::Infeasible:
            err << "infeasible: " << rep.message << "\n";
            return kExitInfeasible;
        case SolveStatus::Unsupported:
            err << "unsupported: " << rep.message << "\n";
            return kExitUnsupported;
    }
    return kExitUsage;
}

int do_validate(const CommonOpts& opts, const std::string& instance_path,
                std::istream& in, std::ostream& out, std::ostream& err) {
    const std::string text = read_input(opts.in_path, in);
    const Policy policy = opts.policy();

    Instance inst;
    Labeling labeling;
    bool have_labeling = true;
    if (!instance_path.empty()) {
        std::ifstream f(instance_path, std::ios::binary);
        if (!f) throw InvalidArgument("cannot read instance file: " + instance_path);
        std::string inst_text((std::istreambuf_iterator<char>(f)),
                              std::istreambuf_iterator<char>());
        inst = parse_instance(inst_text);
        labeling = parse_labeling(text, inst);
    } else if (document_has_labeling(text)) {
        if (!document_has_instance(text))
            throw InvalidArgument(
                "input has no embedded instance; pass the instance with --instance");
        auto bundle = parse_bundle(text);
        inst = bundle.first;
        labeling = bundle.second;
    } else {
        // A bare instance document: check the instance alone.
        inst = parse_instance(text);
        have_labeling = false;
    }
    if (!opts.variant_spec.empty())
        inst.variant = parse_variant_spec(opts.variant_spec, inst.variant);

    ValidationReport pre = validate_instance(inst, policy);
    if (!pre.ok()) {
        print_violations(pre, err);
        err << "instance invalid\n";
        return kExitInfeasible;
    }
    if (!have_labeling) {
        for (const auto& n : pre.notes) err << "note: " << n << "\n";
        out << "valid instance: " << inst.size() << " features\n";
        return kExitOk;
    }

    ValidationReport rep = validate_labeling(labeling, inst, policy);
    print_violations(rep, err);
    if (!rep.ok()) return kExitInfeasible;
    out << "valid: objective = " << format_number(labeling.objective) << "\n";
    return kExitOk;
}

int do_oracle(const CommonOpts& opts, int extra_grid, std::istream& in,
              std::ostream& out, std::ostream& err) {
    const Instance inst = load_instance(opts, in);
    const Policy policy = opts.policy();

    ValidationReport pre = validate_instance(inst, policy);
    if (!pre.ok()) {
        print_violations(pre, err);
        err << "instance invalid; not solving\n";
        return kExitInfeasible;
    }

    OracleResult res;
    if (inst.variant.ports == PortMode::Locked) {
        res = oracle_locked_candidates(inst, policy);
    } else if (inst.variant.order == OrderMode::Locked) {
        res = oracle_locked_order_free(inst, extra_grid, policy);
    } else {
        res = oracle_free_order(inst, policy);
    }

    err << "search space: " << res.search_space << " configurations\n";
    switch (res.status) {
        case SolveStatus::Optimal:
            write_output(opts.out_path, out, serialize_bundle(*res.labeling, inst));
            err << "optimal: objective = " << format_number(res.objective) << "\n";
            return kExitOk;
        case SolveStatus::Infeasible:
            err << "infeasible: " << res.message << "\n";
            return kExitInfeasible;
        case SolveStatus::Unsupported:
            err << "unsupported: " << res.message << "\n";
            return kExitUnsupported;
    }
    return kExitUsage;
}

int do_gen_random(const CommonOpts& opts, std::uint64_t seed, int n,
                  const std::string& radii, std::ostream& out) {
    Variant variant;
    if (!opts.variant_spec.empty())
        variant = parse_variant_spec(opts.variant_spec, variant);
    RadiusDistribution dist = RadiusDistribution::Stratified;
    if (radii == "uniform") dist = RadiusDistribution::UniformDistinct;
    Instance inst = gen_random(seed, n, variant, dist);
    write_output(opts.out_path, out, serialize_instance(inst));
    return kExitOk;
}

int do_gen_partition(const CommonOpts& opts, const std::string& set_spec,
                     bool free_ratio, std::ostream& out, std::ostream& err) {
    std::vector<long long> xs;
    std::stringstream ss(set_spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            long long v = std::stoll(item, &pos);
            if (pos != item.size() || v <= 0)
                throw InvalidArgument("--set items must be positive integers: " + item);
            xs.push_back(v);
        } catch (const InvalidArgument&) {
            throw;
        } catch (const std::exception&) {
            throw InvalidArgument("--set items must be positive integers: " + item);
        }
    }
    if (xs.empty()) throw InvalidArgument("--set must contain at least one integer");

    auto [inst, spec] = gen_partition_gadget(
        xs, free_ratio ? RatioMode::UniformFree : RatioMode::UniformLocked);
    write_output(opts.out_path, out, serialize_instance(inst));
    err << "sum = " << spec.sum << ", circumference = "
        << format_number(spec.circumference) << "\n";
    err << "threshold k = " << format_number(spec.threshold)
        << " (total leader length < k iff the set splits into equal halves)\n";
    return kExitOk;
}

int do_render(const CommonOpts& opts, bool witness, double size_px,
              std::istream& in, std::ostream& out, std::ostream& err) {
    const std::string text = read_input(opts.in_path, in);
    const Policy policy = opts.policy();

    Instance inst;
    const Labeling* labeling_ptr = nullptr;
    Labeling labeling;
    if (document_has_instance(text) && document_has_labeling(text)) {
        auto bundle = parse_bundle(text);
        inst = bundle.first;
        labeling = bundle.second;
        labeling_ptr = &labeling;
    } else {
        inst = parse_instance(text);
    }
    if (!opts.variant_spec.empty())
        inst.variant = parse_variant_spec(opts.variant_spec, inst.variant);

    RenderStyle style;
    style.draw_witness = witness;
    if (size_px > 0.0) style.size_px = size_px;
    write_output(opts.out_path, out, render_svg(inst, labeling_ptr, style, policy));
    if (labeling_ptr) {
        err << "rendered labeling with " << labeling.leaders.size() << " leaders\n";
    } else {
        err << "rendered instance with " << inst.size() << " features\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
    CLI::App app{"orbital boundary labeling: solvers, validators, generators"};
    app.require_subcommand(1);

    CommonOpts solve_opts, validate_opts, oracle_opts, gen_opts, render_opts;
    std::string validate_instance_path;
    int oracle_grid = 0;
    std::uint64_t gen_seed = 1;
    int gen_n = 6;
    std::string gen_radii = "stratified";
    std::string gen_set;
    bool gen_free_ratio = false;
    bool render_witness = false;
    double render_size = 0.0;

    auto* solve_cmd =
        app.add_subcommand("solve", "solve an instance and print the labeling bundle");
    solve_cmd->add_option("--in", solve_opts.in_path, "instance JSON (default: stdin)");
    solve_cmd->add_option("--out", solve_opts.out_path, "output file (default: stdout)");
    solve_cmd->add_option("--variant", solve_opts.variant_spec,
                          "override variant fields, e.g. ports=locked,order=free,k=0.25");
    add_policy_flags(solve_cmd, solve_opts);

    auto* validate_cmd = app.add_subcommand(
        "validate", "check a labeling (bundle on stdin, or labeling + --instance)");
    validate_cmd->add_option("--in", validate_opts.in_path,
                             "labeling or bundle JSON (default: stdin)");
    validate_cmd->add_option("--instance", validate_instance_path,
                             "instance JSON when the input is a bare labeling");
    validate_cmd->add_option("--variant", validate_opts.variant_spec,
                             "override variant fields before checking");
    add_policy_flags(validate_cmd, validate_opts);

    auto* oracle_cmd = app.add_subcommand(
        "oracle", "exhaustive reference solve (small instances only)");
    oracle_cmd->add_option("--in", oracle_opts.in_path, "instance JSON (default: stdin)");
    oracle_cmd->add_option("--out", oracle_opts.out_path, "output file (default: stdout)");
    oracle_cmd->add_option("--variant", oracle_opts.variant_spec,
                           "override variant fields before solving");
    oracle_cmd->add_option("--grid", oracle_grid,
                           "extra uniformly spaced rotations to probe")
        ->check(CLI::NonNegativeNumber);
    add_policy_flags(oracle_cmd, oracle_opts);

    auto* gen_cmd = app.add_subcommand("gen", "generate instances");
    gen_cmd->require_subcommand(1);
    auto* gen_random_cmd = gen_cmd->add_subcommand("random", "random instance");
    gen_random_cmd->add_option("--seed", gen_seed, "random seed (default 1)");
    gen_random_cmd->add_option("--n", gen_n, "number of features (default 6)")
        ->check(CLI::PositiveNumber);
    gen_random_cmd->add_option("--variant", gen_opts.variant_spec,
                               "variant fields, e.g. ports=free,order=locked");
    gen_random_cmd->add_option("--radii", gen_radii, "radius distribution")
        ->check(CLI::IsMember({"stratified", "uniform"}));
    gen_random_cmd->add_option("--out", gen_opts.out_path,
                               "output file (default: stdout)");
    auto* gen_partition_cmd = gen_cmd->add_subcommand(
        "partition", "equal-split decision gadget from a set of integers");
    gen_partition_cmd
        ->add_option("--set", gen_set, "comma-separated positive integers, e.g. 1,1,2")
        ->required();
    gen_partition_cmd->add_flag("--free-ratio", gen_free_ratio,
                                "use the free uniform port ratio instead of 1/2");
    gen_partition_cmd->add_option("--out", gen_opts.out_path,
                                  "output file (default: stdout)");

    auto* render_cmd =
        app.add_subcommand("render", "render an instance or bundle as SVG");
    render_cmd->add_option("--in", render_opts.in_path,
                           "instance or bundle JSON (default: stdin)");
    render_cmd->add_option("--out", render_opts.out_path,
                           "output file (default: stdout)");
    render_cmd->add_option("--variant", render_opts.variant_spec,
                           "override variant fields before drawing");
    render_cmd->add_flag("--witness", render_witness,
                         "draw a splitting ray that crosses no leader");
    render_cmd->add_option("--size", render_size, "canvas size in pixels")
        ->check(CLI::PositiveNumber);
    add_policy_flags(render_cmd, render_opts);

    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.emplace_back("orbital");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(full.size());
    for (auto& s : full) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (solve_cmd->parsed()) return do_solve(solve_opts, in, out, err);
        if (validate_cmd->parsed())
            return do_validate(validate_opts, validate_instance_path, in, out, err);
        if (oracle_cmd->parsed()) return do_oracle(oracle_opts, oracle_grid, in, out, err);
        if (gen_cmd->parsed()) {
            if (gen_random_cmd->parsed())
                return do_gen_random(gen_opts, gen_seed, gen_n, gen_radii, out);
            if (gen_partition_cmd->parsed())
                return do_gen_partition(gen_opts, gen_set, gen_free_ratio, out, err);
        }
        if (render_cmd->parsed())
            return do_render(render_opts, render_witness, render_size, in, out, err);
        err << "error: no subcommand selected\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DegenerateInput& e) {
        err << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const SizeRefusal& e) {
        err << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace orbital
