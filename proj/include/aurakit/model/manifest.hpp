#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aurakit/model/program.hpp"
#include "aurakit/model/value.hpp"

namespace aurakit::model {

enum class SkillKind { type1, type2 };

enum class PayloadKind {
    spectrum,
    complex_spectrum,
    image,
    height_map,
    sinogram,
    tga_curve,
    orientation_map,
    table,
    scalar,
    figure
};

std::string payload_kind_name(PayloadKind k);
std::optional<PayloadKind> payload_kind_from(const std::string& s);

struct ParamSpec {
    std::string name;
    ValueType value_type = ValueType::real;
    std::optional<std::string> unit;
    std::optional<Value> default_value;
    // numeric constraint (closed range) or allowed set for choice params
    std::optional<std::pair<double, double>> range;
    std::vector<std::string> choices;
};

struct IOSpec {
    std::string name;
    PayloadKind payload_kind = PayloadKind::spectrum;
    std::string description;
};

struct Dependency {
    std::string name;
    std::string requirement;
};

struct SkillManifest {
    std::string name;
    std::string version;
    SkillKind skill_kind = SkillKind::type1;
    std::string description;
    std::vector<ParamSpec> parameters;
    std::vector<IOSpec> inputs;
    std::vector<IOSpec> outputs;
    std::vector<Dependency> dependencies;
    // type1: target simulator model id; type2: required analysis op names
    std::string environment_model;
    std::vector<std::string> environment_ops;
};

struct ManifestDiagnostic {
    std::string path;  // e.g. "parameters[1].name"
    std::string message;
};

// Empty result iff every manifest invariant holds.
std::vector<ManifestDiagnostic> validate_manifest(const SkillManifest& m,
                                                  const std::set<std::string>& known_models,
                                                  const std::set<std::string>& known_ops);

bool is_identifier(const std::string& s);

}  // namespace aurakit::model
