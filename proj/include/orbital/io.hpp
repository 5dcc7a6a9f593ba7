#pragma once

#include <optional>
#include <string>

#include "orbital/instance.hpp"

namespace orbital {

/// Instance document: {"circumference", "features": [{"id","r","angle","lambda"}],
/// "variant": {"ports","order","sizes","ratios","k"?,"K"?},
/// "candidates"?: [...], "order"?: [ids]}.  Features may alternatively give
/// Cartesian {"x","y"}; they are converted to polar on parse.
Instance parse_instance(const std::string& json_text);
std::string serialize_instance(const Instance& instance);

/// Labeling document: {"labels": [{"id","start","extent","port"}],
/// "leaders": [{"id","direction","span","port"}], "objective"}.
/// An optional "instance" key may embed the instance (written by the CLI so
/// solve output pipes straight into validate).
Labeling parse_labeling(const std::string& json_text, const Instance& instance);

/// Parse a labeling document that embeds its instance.
std::pair<Instance, Labeling> parse_bundle(const std::string& json_text);
bool document_has_labeling(const std::string& json_text);
bool document_has_instance(const std::string& json_text);

std::string serialize_labeling(const Labeling& labeling, const Instance& instance);
/// Labeling with the instance embedded under "instance".
std::string serialize_bundle(const Labeling& labeling, const Instance& instance);

/// Compact variant spec used on the command line, e.g.
/// "ports=free,order=locked,sizes=uniform,ratios=uniform-locked,k=0.5".
/// K for nonuniform-locked is semicolon-separated: "K=0.25;0.5;0.75".
/// Keys not mentioned keep their value from `base`.
Variant parse_variant_spec(const std::string& spec, const Variant& base = {});

/// Format a double with up to 17 significant digits (round-trip exact).
std::string format_number(double v);

}  // namespace orbital
