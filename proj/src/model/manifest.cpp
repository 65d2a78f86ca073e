#include "aurakit/model/manifest.hpp"

#include <cmath>

#include "aurakit/core/semver.hpp"

namespace aurakit::model {

std::string payload_kind_name(PayloadKind k) {
    switch (k) {
        case PayloadKind::spectrum: return "spectrum";
        case PayloadKind::complex_spectrum: return "complex_spectrum";
        case PayloadKind::image: return "image";
        case PayloadKind::height_map: return "height_map";
        case PayloadKind::sinogram: return "sinogram";
        case PayloadKind::tga_curve: return "tga_curve";
        case PayloadKind::orientation_map: return "orientation_map";
        case PayloadKind::table: return "table";
        case PayloadKind::scalar: return "scalar";
        case PayloadKind::figure: return "figure";
    }
    return "?";
}

std::optional<PayloadKind> payload_kind_from(const std::string& s) {
    static const std::map<std::string, PayloadKind> names = {
        {"spectrum", PayloadKind::spectrum},
        {"complex_spectrum", PayloadKind::complex_spectrum},
        {"image", PayloadKind::image},
        {"height_map", PayloadKind::height_map},
        {"sinogram", PayloadKind::sinogram},
        {"tga_curve", PayloadKind::tga_curve},
        {"orientation_map", PayloadKind::orientation_map},
        {"table", PayloadKind::table},
        {"scalar", PayloadKind::scalar},
        {"figure", PayloadKind::figure},
    };
    auto it = names.find(s);
    if (it == names.end()) return std::nullopt;
    return it->second;
}

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!(s[0] >= 'a' && s[0] <= 'z')) return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
        if (!ok) return false;
    }
    return true;
}

namespace {

bool value_matches_type(const Value& v, ValueType t) {
    switch (t) {
        case ValueType::int_type: return v.is_int();
        case ValueType::real: return v.is_number();
        case ValueType::text: return v.is_text();
        case ValueType::boolean: return v.is_bool();
        case ValueType::choice: return v.is_text();
    }
    return false;
}

void validate_param(const ParamSpec& p, const std::string& path,
                    std::vector<ManifestDiagnostic>& out) {
    if (!is_identifier(p.name)) out.push_back({path + ".name", "invalid identifier"});
    if (p.range) {
        if (p.value_type != ValueType::int_type && p.value_type != ValueType::real)
            out.push_back({path + ".constraint", "range constraint on non-numeric parameter"});
        if (!(p.range->first <= p.range->second))
            out.push_back({path + ".constraint", "range lower bound exceeds upper bound"});
    }
    if (!p.choices.empty() && p.value_type != ValueType::choice)
        out.push_back({path + ".constraint", "allowed set on non-choice parameter"});
    if (p.value_type == ValueType::choice && p.choices.empty())
        out.push_back({path + ".constraint", "choice parameter needs an allowed set"});
    if (p.default_value) {
        if (!value_matches_type(*p.default_value, p.value_type)) {
            out.push_back({path + ".default", "default does not match the declared type"});
        } else if (p.range && p.range->first <= p.range->second) {
            double d = p.default_value->as_real();
            if (d < p.range->first || d > p.range->second)
                out.push_back({path + ".default", "default violates the range constraint"});
        } else if (p.value_type == ValueType::choice && !p.choices.empty()) {
            bool found = false;
            for (const auto& c : p.choices) found |= (c == p.default_value->as_text());
            if (!found)
                out.push_back({path + ".default", "default is not in the allowed set"});
        }
    }
}

void validate_iospecs(const std::vector<IOSpec>& specs, const std::string& section,
                      std::vector<ManifestDiagnostic>& out) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        std::string path = section + "[" + std::to_string(i) + "]";
        if (!is_identifier(specs[i].name)) out.push_back({path + ".name", "invalid identifier"});
        if (!seen.insert(specs[i].name).second)
            out.push_back({path + ".name", "duplicate name '" + specs[i].name + "'"});
    }
}

}  // namespace

std::vector<ManifestDiagnostic> validate_manifest(const SkillManifest& m,
                                                  const std::set<std::string>& known_models,
                                                  const std::set<std::string>& known_ops) {
    std::vector<ManifestDiagnostic> out;

    if (!is_identifier(m.name))
        out.push_back({"name", "must match [a-z][a-z0-9_-]*"});
    if (!Semver::parse(m.version))
        out.push_back({"version", "'" + m.version + "' is not a valid semantic version"});

    std::set<std::string> param_names;
    for (std::size_t i = 0; i < m.parameters.size(); ++i) {
        std::string path = "parameters[" + std::to_string(i) + "]";
        if (!param_names.insert(m.parameters[i].name).second)
            out.push_back({path + ".name", "duplicate parameter name '" + m.parameters[i].name + "'"});
        validate_param(m.parameters[i], path, out);
    }

    validate_iospecs(m.inputs, "inputs", out);
    validate_iospecs(m.outputs, "outputs", out);

    for (std::size_t i = 0; i < m.dependencies.size(); ++i) {
        std::string path = "dependencies[" + std::to_string(i) + "]";
        if (!is_identifier(m.dependencies[i].name))
            out.push_back({path + ".name", "invalid identifier"});
        if (!VersionReq::parse(m.dependencies[i].requirement))
            out.push_back({path + ".requirement",
                           "unparseable requirement '" + m.dependencies[i].requirement + "'"});
    }

    if (m.skill_kind == SkillKind::type1) {
        if (!known_models.count(m.environment_model))
            out.push_back({"environment", "unknown model '" + m.environment_model + "'"});
        if (!m.environment_ops.empty())
            out.push_back({"environment", "type1 skills do not declare analysis ops"});
    } else {
        if (!m.environment_model.empty())
            out.push_back({"environment", "type2 skills do not declare a simulator model"});
        for (std::size_t i = 0; i < m.environment_ops.size(); ++i) {
            if (!known_ops.count(m.environment_ops[i]))
                out.push_back({"environment[" + std::to_string(i) + "]",
                               "unknown analysis op '" + m.environment_ops[i] + "'"});
        }
    }
    return out;
}

}  // namespace aurakit::model
