// Python bindings: a thin JSON-string interface over the solver library.
// Structured data crosses the boundary as the same JSON documents the CLI
// reads and writes, so the python package stays schema-compatible with files
// produced by the `orbital` tool.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "orbital/dispatch.hpp"
#include "orbital/errors.hpp"
#include "orbital/gen.hpp"
#include "orbital/io.hpp"
#include "orbital/oracle.hpp"
#include "orbital/render.hpp"
#include "orbital/validate.hpp"

namespace py = pybind11;

namespace {

orbital::Policy make_policy(bool lenient, double tolerance) {
    orbital::Policy p;
    p.strict = !lenient;
    if (tolerance >= 0.0) {
        p.eps_theta = tolerance;
        p.eps_len_rel = tolerance;
    }
    return p;
}

orbital::Instance load_instance(const std::string& json_text,
                                const std::string& variant_spec) {
    orbital::Instance inst;
    if (orbital::document_has_instance(json_text) &&
        orbital::document_has_labeling(json_text)) {
        inst = orbital::parse_bundle(json_text).first;
    } else {
        inst = orbital::parse_instance(json_text);
    }
    if (!variant_spec.empty())
        inst.variant = orbital::parse_variant_spec(variant_spec, inst.variant);
    return inst;
}

py::dict report_dict(const orbital::SolveReport& rep, const orbital::Instance& inst) {
    py::dict d;
    d["status"] = orbital::to_string(rep.status);
    d["message"] = rep.message;
    d["notes"] = rep.notes;
    if (rep.labeling) {
        d["objective"] = rep.labeling->objective;
        d["bundle"] = orbital::serialize_bundle(*rep.labeling, inst);
    } else {
        d["objective"] = py::none();
        d["bundle"] = py::none();
    }
    return d;
}

py::dict solve_json(const std::string& instance_json, bool lenient, double tolerance,
                    const std::string& variant) {
    orbital::Instance inst = load_instance(instance_json, variant);
    orbital::Policy policy = make_policy(lenient, tolerance);
    orbital::ValidationReport pre = orbital::validate_instance(inst, policy);
    if (!pre.ok()) {
        orbital::SolveReport rep =
            orbital::SolveReport::infeasible("instance invalid: " +
                                             pre.violations.front().message);
        return report_dict(rep, inst);
    }
    return report_dict(orbital::solve(inst, policy), inst);
}

py::dict validate_json(const std::string& document_json,
                       const std::string& instance_json, bool lenient,
                       double tolerance) {
    orbital::Policy policy = make_policy(lenient, tolerance);
    orbital::Instance inst;
    orbital::Labeling labeling;
    if (!instance_json.empty()) {
        inst = orbital::parse_instance(instance_json);
        labeling = orbital::parse_labeling(document_json, inst);
    } else {
        auto bundle = orbital::parse_bundle(document_json);
        inst = bundle.first;
        labeling = bundle.second;
    }
    orbital::ValidationReport rep = orbital::validate_labeling(labeling, inst, policy);
    py::list violations;
    for (const auto& v : rep.violations)
        violations.append(py::make_tuple(v.code, v.message));
    py::dict d;
    d["ok"] = rep.ok();
    d["violations"] = violations;
    d["notes"] = rep.notes;
    d["objective"] = labeling.objective;
    return d;
}

py::dict oracle_json(const std::string& instance_json, int grid, bool lenient,
                     double tolerance, const std::string& variant) {
    orbital::Instance inst = load_instance(instance_json, variant);
    orbital::Policy policy = make_policy(lenient, tolerance);
    orbital::OracleResult res;
    if (inst.variant.ports == orbital::PortMode::Locked) {
        res = orbital::oracle_locked_candidates(inst, policy);
    } else if (inst.variant.order == orbital::OrderMode::Locked) {
        res = orbital::oracle_locked_order_free(inst, grid, policy);
    } else {
        res = orbital::oracle_free_order(inst, policy);
    }
    py::dict d;
    d["status"] = orbital::to_string(res.status);
    d["message"] = res.message;
    d["search_space"] = res.search_space;
    if (res.labeling) {
        d["objective"] = res.objective;
        d["bundle"] = orbital::serialize_bundle(*res.labeling, inst);
    } else {
        d["objective"] = py::none();
        d["bundle"] = py::none();
    }
    return d;
}

std::string render_json(const std::string& document_json, bool witness,
                        double size, bool lenient, double tolerance) {
    orbital::Policy policy = make_policy(lenient, tolerance);
    orbital::Instance inst;
    orbital::Labeling labeling;
    const orbital::Labeling* ptr = nullptr;
    if (orbital::document_has_instance(document_json) &&
        orbital::document_has_labeling(document_json)) {
        auto bundle = orbital::parse_bundle(document_json);
        inst = bundle.first;
        labeling = bundle.second;
        ptr = &labeling;
    } else {
        inst = orbital::parse_instance(document_json);
    }
    orbital::RenderStyle style;
    style.draw_witness = witness;
    if (size > 0.0) style.size_px = size;
    return orbital::render_svg(inst, ptr, style, policy);
}

std::string generate_random(std::uint64_t seed, int n, const std::string& variant) {
    orbital::Variant v;
    if (!variant.empty()) v = orbital::parse_variant_spec(variant, v);
    return orbital::serialize_instance(orbital::gen_random(seed, n, v));
}

py::dict generate_partition(const std::vector<long long>& xs, bool free_ratio) {
    auto [inst, spec] = orbital::gen_partition_gadget(
        xs, free_ratio ? orbital::RatioMode::UniformFree
                       : orbital::RatioMode::UniformLocked);
    py::dict d;
    d["instance"] = orbital::serialize_instance(inst);
    d["threshold"] = spec.threshold;
    d["circumference"] = spec.circumference;
    d["sum"] = spec.sum;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "orbital boundary labeling: exact solvers for circular-arc labels "
              "connected to interior features by orbital-radial leaders";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const orbital::ParseError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const orbital::InvalidArgument& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.attr("__version__") = "0.1.0";

    m.def("solve", &solve_json, py::arg("instance_json"), py::kw_only(),
          py::arg("lenient") = false, py::arg("tolerance") = -1.0,
          py::arg("variant") = std::string(),
          "Solve an instance document; returns a dict with status, objective, "
          "bundle (labeling JSON), message and notes.");
    m.def("validate", &validate_json, py::arg("document_json"), py::kw_only(),
          py::arg("instance_json") = std::string(), py::arg("lenient") = false,
          py::arg("tolerance") = -1.0,
          "Check a labeling bundle (or labeling + instance); returns a dict "
          "with ok, violations, notes and objective.");
    m.def("oracle", &oracle_json, py::arg("instance_json"), py::kw_only(),
          py::arg("grid") = 0, py::arg("lenient") = false,
          py::arg("tolerance") = -1.0, py::arg("variant") = std::string(),
          "Exhaustive reference solve for small instances.");
    m.def("render", &render_json, py::arg("document_json"), py::kw_only(),
          py::arg("witness") = false, py::arg("size") = 0.0,
          py::arg("lenient") = false, py::arg("tolerance") = -1.0,
          "Render an instance or bundle document as an SVG string.");
    m.def("generate_random", &generate_random, py::arg("seed"), py::arg("n"),
          py::kw_only(), py::arg("variant") = std::string(),
          "Generate a random instance document.");
    m.def("generate_partition", &generate_partition, py::arg("xs"), py::kw_only(),
          py::arg("free_ratio") = false,
          "Build the equal-split decision gadget for a set of positive "
          "integers; returns the instance and its decision threshold.");
}
