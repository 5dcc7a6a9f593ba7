#include "orbital/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace orbital {

using nlohmann::json;

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += "\"";
    return out;
}

double require_number(const json& obj, const char* key, const std::string& ctx) {
    if (!obj.contains(key))
        throw ParseError("missing required field", ctx + "." + key);
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ParseError("expected a number", ctx + "." + key);
    return v.get<double>();
}

std::string require_string(const json& obj, const char* key, const std::string& ctx) {
    if (!obj.contains(key))
        throw ParseError("missing required field", ctx + "." + key);
    const json& v = obj.at(key);
    if (!v.is_string())
        throw ParseError("expected a string", ctx + "." + key);
    return v.get<std::string>();
}

Variant parse_variant_json(const json& v, const std::string& ctx) {
    Variant out;
    std::string ports = require_string(v, "ports", ctx);
    std::string order = require_string(v, "order", ctx);
    std::string sizes = require_string(v, "sizes", ctx);
    std::string ratios = require_string(v, "ratios", ctx);
    if (ports == "free") out.ports = PortMode::Free;
    else if (ports == "locked") out.ports = PortMode::Locked;
    else throw ParseError("ports must be 'free' or 'locked'", ctx + ".ports");
    if (order == "free") out.order = OrderMode::Free;
    else if (order == "locked") out.order = OrderMode::Locked;
    else throw ParseError("order must be 'free' or 'locked'", ctx + ".order");
    if (sizes == "uniform") out.sizes = SizeMode::Uniform;
    else if (sizes == "nonuniform") out.sizes = SizeMode::NonUniform;
    else throw ParseError("sizes must be 'uniform' or 'nonuniform'", ctx + ".sizes");
    if (ratios == "uniform-locked") {
        out.ratios = RatioMode::UniformLocked;
        out.k = require_number(v, "k", ctx);
        if (out.k < 0.0 || out.k > 1.0)
            throw ParseError("ratio k must lie in [0, 1]", ctx + ".k");
    } else if (ratios == "uniform-free") {
        out.ratios = RatioMode::UniformFree;
    } else if (ratios == "nonuniform-locked") {
        out.ratios = RatioMode::NonUniformLocked;
        if (!v.contains("K") || !v.at("K").is_array())
            throw ParseError("nonuniform-locked ratios need array K", ctx + ".K");
        for (const auto& e : v.at("K")) {
            if (!e.is_number()) throw ParseError("K entries must be numbers", ctx + ".K");
            double r = e.get<double>();
            if (r < 0.0 || r > 1.0)
                throw ParseError("ratios in K must lie in [0, 1]", ctx + ".K");
            out.K.push_back(r);
        }
    } else if (ratios == "nonuniform-free") {
        out.ratios = RatioMode::NonUniformFree;
    } else {
        throw ParseError("unknown ratios mode '" + ratios + "'", ctx + ".ratios");
    }
    return out;
}

json parse_json_text(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded())
        throw ParseError("input is not valid JSON", "document");
    return doc;
}

Instance instance_from_json(const json& doc, const std::string& ctx) {
    if (!doc.is_object()) throw ParseError("expected a JSON object", ctx);
    Instance inst;
    inst.circumference = require_number(doc, "circumference", ctx);
    if (!(inst.circumference > 0.0))
        throw ParseError("circumference must be positive", ctx + ".circumference");
    if (!doc.contains("features") || !doc.at("features").is_array())
        throw ParseError("missing required field", ctx + ".features");
    int i = 0;
    for (const auto& f : doc.at("features")) {
        std::string fctx = ctx + ".features[" + std::to_string(i++) + "]";
        if (!f.is_object()) throw ParseError("expected an object", fctx);
        Feature feat;
        feat.id = require_string(f, "id", fctx);
        if (f.contains("r") || f.contains("angle")) {
            feat.position.radius = require_number(f, "r", fctx);
            feat.position.angle = normalize_angle(require_number(f, "angle", fctx));
        } else if (f.contains("x") || f.contains("y")) {
            double x = require_number(f, "x", fctx);
            double y = require_number(f, "y", fctx);
            feat.position.radius = std::hypot(x, y);
            feat.position.angle =
                (feat.position.radius == 0.0) ? 0.0 : normalize_angle(std::atan2(y, x));
        } else {
            throw ParseError("feature needs polar {r, angle} or Cartesian {x, y}",
                             fctx);
        }
        if (feat.position.radius < 0.0)
            throw ParseError("feature radius must be non-negative", fctx + ".r");
        feat.label_length = require_number(f, "lambda", fctx);
        if (!(feat.label_length > 0.0))
            throw ParseError("label length must be positive", fctx + ".lambda");
        inst.features.push_back(std::move(feat));
    }
    if (!doc.contains("variant"))
        throw ParseError("missing required field", ctx + ".variant");
    inst.variant = parse_variant_json(doc.at("variant"), ctx + ".variant");
    if (doc.contains("candidates")) {
        if (!doc.at("candidates").is_array())
            throw ParseError("candidates must be an array", ctx + ".candidates");
        for (const auto& c : doc.at("candidates")) {
            if (!c.is_number())
                throw ParseError("candidate angles must be numbers", ctx + ".candidates");
            inst.candidates.push_back(normalize_angle(c.get<double>()));
        }
        std::sort(inst.candidates.begin(), inst.candidates.end());
    }
    if (doc.contains("order")) {
        if (!doc.at("order").is_array())
            throw ParseError("order must be an array of feature ids", ctx + ".order");
        for (const auto& o : doc.at("order")) {
            if (!o.is_string())
                throw ParseError("order entries must be feature ids", ctx + ".order");
            int idx = inst.index_of(o.get<std::string>());
            if (idx < 0)
                throw ParseError("order references unknown feature '" +
                                     o.get<std::string>() + "'",
                                 ctx + ".order");
            inst.order.push_back(idx);
        }
    }
    return inst;
}

Labeling labeling_from_json(const json& doc, const Instance& instance,
                            const std::string& ctx) {
    if (!doc.is_object()) throw ParseError("expected a JSON object", ctx);
    Labeling lab;
    for (const char* key : {"labels", "leaders"}) {
        if (!doc.contains(key) || !doc.at(key).is_array())
            throw ParseError("missing required field", ctx + "." + key);
    }
    int i = 0;
    for (const auto& l : doc.at("labels")) {
        std::string lctx = ctx + ".labels[" + std::to_string(i++) + "]";
        Label label;
        std::string id = require_string(l, "id", lctx);
        label.feature = instance.index_of(id);
        if (label.feature < 0)
            throw ParseError("label references unknown feature '" + id + "'", lctx);
        label.start = normalize_angle(require_number(l, "start", lctx));
        label.extent = require_number(l, "extent", lctx);
        if (!(label.extent > 0.0) || label.extent > kTwoPi + 1e-12)
            throw ParseError("label extent must lie in (0, 2*pi]", lctx + ".extent");
        label.port = normalize_angle(require_number(l, "port", lctx));
        lab.labels.push_back(label);
    }
    i = 0;
    for (const auto& l : doc.at("leaders")) {
        std::string lctx = ctx + ".leaders[" + std::to_string(i++) + "]";
        Leader leader;
        std::string id = require_string(l, "id", lctx);
        leader.feature = instance.index_of(id);
        if (leader.feature < 0)
            throw ParseError("leader references unknown feature '" + id + "'", lctx);
        leader.direction = direction_from_string(require_string(l, "direction", lctx));
        leader.orbital_span = require_number(l, "span", lctx);
        if (leader.orbital_span < 0.0 || leader.orbital_span >= kTwoPi)
            throw ParseError("leader span must lie in [0, 2*pi)", lctx + ".span");
        leader.port = normalize_angle(require_number(l, "port", lctx));
        lab.leaders.push_back(leader);
    }
    lab.objective = require_number(doc, "objective", ctx);
    // Keep both lists in feature-index order for the rest of the library.
    auto by_feature = [](const auto& a, const auto& b) { return a.feature < b.feature; };
    std::sort(lab.labels.begin(), lab.labels.end(), by_feature);
    std::sort(lab.leaders.begin(), lab.leaders.end(), by_feature);
    return lab;
}

void append_variant(std::ostringstream& out, const Variant& v) {
    out << "{\"ports\":" << (v.ports == PortMode::Free ? "\"free\"" : "\"locked\"")
        << ",\"order\":" << (v.order == OrderMode::Free ? "\"free\"" : "\"locked\"")
        << ",\"sizes\":"
        << (v.sizes == SizeMode::Uniform ? "\"uniform\"" : "\"nonuniform\"");
    switch (v.ratios) {
        case RatioMode::UniformLocked:
            out << ",\"ratios\":\"uniform-locked\",\"k\":" << format_number(v.k);
            break;
        case RatioMode::UniformFree: out << ",\"ratios\":\"uniform-free\""; break;
        case RatioMode::NonUniformLocked: {
            out << ",\"ratios\":\"nonuniform-locked\",\"K\":[";
            for (size_t i = 0; i < v.K.size(); ++i)
                out << (i ? "," : "") << format_number(v.K[i]);
            out << "]";
            break;
        }
        case RatioMode::NonUniformFree: out << ",\"ratios\":\"nonuniform-free\""; break;
    }
    out << "}";
}

void append_instance(std::ostringstream& out, const Instance& inst) {
    out << "{\"circumference\":" << format_number(inst.circumference)
        << ",\"features\":[";
    for (int i = 0; i < inst.size(); ++i) {
        const Feature& f = inst.features[i];
        out << (i ? "," : "") << "{\"id\":" << quote(f.id)
            << ",\"r\":" << format_number(f.position.radius)
            << ",\"angle\":" << format_number(f.position.angle)
            << ",\"lambda\":" << format_number(f.label_length) << "}";
    }
    out << "],\"variant\":";
    append_variant(out, inst.variant);
    if (!inst.candidates.empty()) {
        out << ",\"candidates\":[";
        for (size_t i = 0; i < inst.candidates.size(); ++i)
            out << (i ? "," : "") << format_number(inst.candidates[i]);
        out << "]";
    }
    if (!inst.order.empty()) {
        out << ",\"order\":[";
        for (size_t i = 0; i < inst.order.size(); ++i)
            out << (i ? "," : "") << quote(inst.features[inst.order[i]].id);
        out << "]";
    }
    out << "}";
}

void append_labeling(std::ostringstream& out, const Labeling& lab,
                     const Instance& inst, bool with_instance) {
    out << "{\"labels\":[";
    for (size_t i = 0; i < lab.labels.size(); ++i) {
        const Label& l = lab.labels[i];
        out << (i ? "," : "") << "{\"id\":" << quote(inst.features[l.feature].id)
            << ",\"start\":" << format_number(l.start)
            << ",\"extent\":" << format_number(l.extent)
            << ",\"port\":" << format_number(l.port) << "}";
    }
    out << "],\"leaders\":[";
    for (size_t i = 0; i < lab.leaders.size(); ++i) {
        const Leader& l = lab.leaders[i];
        out << (i ? "," : "") << "{\"id\":" << quote(inst.features[l.feature].id)
            << ",\"direction\":\"" << to_string(l.direction) << "\""
            << ",\"span\":" << format_number(l.orbital_span)
            << ",\"port\":" << format_number(l.port) << "}";
    }
    out << "],\"objective\":" << format_number(lab.objective);
    if (with_instance) {
        out << ",\"instance\":";
        append_instance(out, inst);
    }
    out << "}";
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
    return instance_from_json(parse_json_text(json_text), "instance");
}

std::string serialize_instance(const Instance& instance) {
    std::ostringstream out;
    append_instance(out, instance);
    out << "\n";
    return out.str();
}

Labeling parse_labeling(const std::string& json_text, const Instance& instance) {
    return labeling_from_json(parse_json_text(json_text), instance, "labeling");
}

std::pair<Instance, Labeling> parse_bundle(const std::string& json_text) {
    json doc = parse_json_text(json_text);
    if (!doc.is_object() || !doc.contains("instance"))
        throw ParseError("labeling document has no embedded instance", "labeling.instance");
    Instance inst = instance_from_json(doc.at("instance"), "labeling.instance");
    Labeling lab = labeling_from_json(doc, inst, "labeling");
    return {std::move(inst), std::move(lab)};
}

bool document_has_labeling(const std::string& json_text) {
    json doc = parse_json_text(json_text);
    return doc.is_object() && doc.contains("labels") && doc.contains("leaders");
}

bool document_has_instance(const std::string& json_text) {
    json doc = parse_json_text(json_text);
    if (!doc.is_object()) return false;
    return doc.contains("instance") ||
           (doc.contains("circumference") && doc.contains("features"));
}

std::string serialize_labeling(const Labeling& labeling, const Instance& instance) {
    std::ostringstream out;
    append_labeling(out, labeling, instance, false);
    out << "\n";
    return out.str();
}

std::string serialize_bundle(const Labeling& labeling, const Instance& instance) {
    std::ostringstream out;
    append_labeling(out, labeling, instance, true);
    out << "\n";
    return out.str();
}

Variant parse_variant_spec(const std::string& spec, const Variant& base) {
    Variant out = base;
    auto to_number = [](const std::string& s) {
        try {
            size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size()) throw ParseError("trailing characters", "variant-spec");
            return v;
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("'" + s + "' is not a number", "variant-spec");
        }
    };
    std::istringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ParseError("variant entries must look like key=value", "variant-spec");
        std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        if (key == "ports") {
            if (value == "free") out.ports = PortMode::Free;
            else if (value == "locked") out.ports = PortMode::Locked;
            else throw ParseError("ports must be 'free' or 'locked'", "variant-spec");
        } else if (key == "order") {
            if (value == "free") out.order = OrderMode::Free;
            else if (value == "locked") out.order = OrderMode::Locked;
            else throw ParseError("order must be 'free' or 'locked'", "variant-spec");
        } else if (key == "sizes") {
            if (value == "uniform") out.sizes = SizeMode::Uniform;
            else if (value == "nonuniform") out.sizes = SizeMode::NonUniform;
            else throw ParseError("sizes must be 'uniform' or 'nonuniform'", "variant-spec");
        } else if (key == "ratios") {
            if (value == "uniform-locked") out.ratios = RatioMode::UniformLocked;
            else if (value == "uniform-free") out.ratios = RatioMode::UniformFree;
            else if (value == "nonuniform-locked") out.ratios = RatioMode::NonUniformLocked;
            else if (value == "nonuniform-free") out.ratios = RatioMode::NonUniformFree;
            else throw ParseError("unknown ratios mode '" + value + "'", "variant-spec");
        } else if (key == "k") {
            out.k = to_number(value);
            if (out.k < 0.0 || out.k > 1.0)
                throw ParseError("ratio k must lie in [0, 1]", "variant-spec");
        } else if (key == "K") {
            out.K.clear();
            std::istringstream ks(value);
            std::string num;
            while (std::getline(ks, num, ';')) {
                double r = to_number(num);
                if (r < 0.0 || r > 1.0)
                    throw ParseError("ratios in K must lie in [0, 1]", "variant-spec");
                out.K.push_back(r);
            }
        } else {
            throw ParseError("unknown variant key '" + key + "'", "variant-spec");
        }
    }
    return out;
}

}  // namespace orbital
