#pragma once

#include <map>
#include <variant>

#include "aurakit/model/manifest.hpp"
#include "aurakit/model/pipeline.hpp"
#include "aurakit/model/program.hpp"

namespace aurakit::model {

// Manifest + body + content digest: the unit of accumulated capability.
struct SkillArtifact {
    SkillManifest manifest;
    std::variant<Type1Program, Type2Pipeline> body;
    std::string digest;  // 64 lowercase hex chars

    bool is_type1() const { return std::holds_alternative<Type1Program>(body); }
    const Type1Program& program() const { return std::get<Type1Program>(body); }
    const Type2Pipeline& pipeline() const { return std::get<Type2Pipeline>(body); }
};

// SHA-256 over the canonical serialization (manifest JSON with sorted keys,
// canonical body bytes, LF endings). Deterministic; any field change changes
// the digest.
std::string artifact_digest(const SkillArtifact& a);

// Canonical on-disk bytes: skill.json, and program.sk / pipeline.json.
std::string manifest_to_json(const SkillManifest& m, bool pretty = true);
SkillManifest manifest_from_json(const std::string& text);

std::string pipeline_to_json(const Type2Pipeline& p, bool pretty = true);
Type2Pipeline pipeline_from_json(const std::string& text);

// Body file name for the artifact's kind: "program.sk" or "pipeline.json".
std::string body_file_name(SkillKind kind);
std::string body_to_bytes(const SkillArtifact& a);

// Loads skill.json plus the matching body file from a directory and fills
// the digest. Errors: InvalidArtifact.
SkillArtifact load_artifact_dir(const std::string& dir);
void save_artifact_dir(const SkillArtifact& a, const std::string& dir);

// A closed, executable Type-1 program: every parameter ref substituted.
struct BoundProgram {
    std::string skill_name;
    std::string skill_version;
    std::string model_id;
    Type1Program program;
    std::map<std::string, Value> arguments;  // post-default, post-check
};

// Substitutes arguments (falling back to declared defaults) into the
// program. Errors: MissingArgument, ConstraintViolation, TypeMismatch,
// UnknownArgument, NotType1.
BoundProgram bind_parameters(const SkillArtifact& artifact,
                             const std::map<std::string, Value>& args);

// Shared argument resolution (also used for Type-2 parameter binding).
std::map<std::string, Value> resolve_arguments(const SkillManifest& manifest,
                                               const std::map<std::string, Value>& args);

}  // namespace aurakit::model
