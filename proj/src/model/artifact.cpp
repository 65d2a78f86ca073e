#include "aurakit/model/artifact.hpp"

#include <filesystem>

#include <json.hpp>

#include "aurakit/core/error.hpp"
#include "aurakit/core/sha256.hpp"
#include "aurakit/core/text.hpp"
#include "aurakit/dsl/formatter.hpp"
#include "aurakit/dsl/parser.hpp"

namespace aurakit::model {

namespace {

using nlohmann::json;

json value_to_json(const Value& v) {
    if (v.is_int()) return v.as_int();
    if (v.is_real()) return v.as_real();
    if (v.is_bool()) return v.as_bool();
    return v.as_text();
}

Value value_from_json(const json& j) {
    if (j.is_number_integer()) return Value(j.get<std::int64_t>());
    if (j.is_number_float()) return Value(j.get<double>());
    if (j.is_boolean()) return Value(j.get<bool>());
    if (j.is_string()) return Value(j.get<std::string>());
    throw Error("InvalidArtifact", "unsupported JSON value kind");
}

std::string value_type_str(ValueType t) { return value_type_name(t); }

ValueType value_type_parse(const std::string& s) {
    if (s == "int") return ValueType::int_type;
    if (s == "real") return ValueType::real;
    if (s == "text") return ValueType::text;
    if (s == "bool") return ValueType::boolean;
    if (s == "choice") return ValueType::choice;
    throw Error("InvalidArtifact", "unknown value type '" + s + "'");
}

json param_to_json(const ParamSpec& p) {
    json j;
    j["name"] = p.name;
    j["type"] = value_type_str(p.value_type);
    if (p.unit) j["unit"] = *p.unit;
    if (p.default_value) j["default"] = value_to_json(*p.default_value);
    if (p.range) j["range"] = {p.range->first, p.range->second};
    if (!p.choices.empty()) j["choices"] = p.choices;
    return j;
}

ParamSpec param_from_json(const json& j) {
    ParamSpec p;
    p.name = j.at("name").get<std::string>();
    p.value_type = value_type_parse(j.at("type").get<std::string>());
    if (j.contains("unit")) p.unit = j["unit"].get<std::string>();
    if (j.contains("default")) {
        p.default_value = value_from_json(j["default"]);
        if (p.value_type == ValueType::real && p.default_value->is_int())
            p.default_value = Value(double(p.default_value->as_int()));
    }
    if (j.contains("range"))
        p.range = std::make_pair(j["range"][0].get<double>(), j["range"][1].get<double>());
    if (j.contains("choices")) p.choices = j["choices"].get<std::vector<std::string>>();
    return p;
}

json iospec_to_json(const IOSpec& s) {
    json j;
    j["name"] = s.name;
    j["kind"] = payload_kind_name(s.payload_kind);
    if (!s.description.empty()) j["description"] = s.description;
    return j;
}

IOSpec iospec_from_json(const json& j) {
    IOSpec s;
    s.name = j.at("name").get<std::string>();
    auto k = payload_kind_from(j.at("kind").get<std::string>());
    if (!k) throw Error("InvalidArtifact", "unknown payload kind");
    s.payload_kind = *k;
    if (j.contains("description")) s.description = j["description"].get<std::string>();
    return s;
}

}  // namespace

std::string manifest_to_json(const SkillManifest& m, bool pretty) {
    json j;
    j["name"] = m.name;
    j["version"] = m.version;
    j["kind"] = m.skill_kind == SkillKind::type1 ? "type1" : "type2";
    j["description"] = m.description;
    j["parameters"] = json::array();
    for (const auto& p : m.parameters) j["parameters"].push_back(param_to_json(p));
    j["inputs"] = json::array();
    for (const auto& s : m.inputs) j["inputs"].push_back(iospec_to_json(s));
    j["outputs"] = json::array();
    for (const auto& s : m.outputs) j["outputs"].push_back(iospec_to_json(s));
    j["dependencies"] = json::array();
    for (const auto& d : m.dependencies)
        j["dependencies"].push_back({{"name", d.name}, {"requirement", d.requirement}});
    if (m.skill_kind == SkillKind::type1)
        j["environment"] = {{"model", m.environment_model}};
    else
        j["environment"] = {{"ops", m.environment_ops}};
    return pretty ? j.dump(2) + "\n" : j.dump();
}

SkillManifest manifest_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error("InvalidArtifact", std::string("manifest is not valid JSON: ") + e.what());
    }
    try {
        SkillManifest m;
        m.name = j.at("name").get<std::string>();
        m.version = j.at("version").get<std::string>();
        std::string kind = j.at("kind").get<std::string>();
        if (kind != "type1" && kind != "type2")
            throw Error("InvalidArtifact", "kind must be type1 or type2");
        m.skill_kind = kind == "type1" ? SkillKind::type1 : SkillKind::type2;
        m.description = j.value("description", "");
        for (const auto& p : j.value("parameters", json::array()))
            m.parameters.push_back(param_from_json(p));
        for (const auto& s : j.value("inputs", json::array()))
            m.inputs.push_back(iospec_from_json(s));
        for (const auto& s : j.value("outputs", json::array()))
            m.outputs.push_back(iospec_from_json(s));
        for (const auto& d : j.value("dependencies", json::array()))
            m.dependencies.push_back(
                {d.at("name").get<std::string>(), d.at("requirement").get<std::string>()});
        if (j.contains("environment")) {
            const auto& env = j["environment"];
            if (env.contains("model")) m.environment_model = env["model"].get<std::string>();
            if (env.contains("ops"))
                m.environment_ops = env["ops"].get<std::vector<std::string>>();
        }
        return m;
    } catch (const json::exception& e) {
        throw Error("InvalidArtifact", std::string("malformed manifest: ") + e.what());
    }
}

namespace {

json binding_to_json(const PipelineBinding& b) {
    json j;
    switch (b.kind) {
        case PipelineBinding::Kind::input: j["input"] = b.ref; break;
        case PipelineBinding::Kind::param: j["param"] = b.ref; break;
        case PipelineBinding::Kind::node_output:
            j["node"] = b.ref;
            j["output"] = b.output;
            break;
        case PipelineBinding::Kind::constant: j["const"] = value_to_json(b.constant); break;
    }
    return j;
}

PipelineBinding binding_from_json(const json& j) {
    if (j.contains("input")) return PipelineBinding::from_input(j["input"].get<std::string>());
    if (j.contains("param")) return PipelineBinding::from_param(j["param"].get<std::string>());
    if (j.contains("node"))
        return PipelineBinding::from_node(j["node"].get<std::string>(),
                                          j.value("output", std::string("value")));
    if (j.contains("const")) return PipelineBinding::from_const(value_from_json(j["const"]));
    throw Error("InvalidArtifact", "pipeline binding needs input/param/node/const");
}

}  // namespace

std::string pipeline_to_json(const Type2Pipeline& p, bool pretty) {
    json j;
    j["nodes"] = json::array();
    for (const auto& n : p.nodes) {
        json jn;
        jn["id"] = n.id;
        jn["op"] = n.op;
        jn["args"] = json::object();
        for (const auto& [k, v] : n.args) jn["args"][k] = binding_to_json(v);
        j["nodes"].push_back(jn);
    }
    j["outputs"] = json::object();
    for (const auto& [name, src] : p.outputs)
        j["outputs"][name] = {{"node", src.first}, {"output", src.second}};
    if (!p.unused_inputs.empty()) j["unused_inputs"] = p.unused_inputs;
    return pretty ? j.dump(2) + "\n" : j.dump();
}

Type2Pipeline pipeline_from_json(const std::string& text) {
    try {
        json j = json::parse(text);
        Type2Pipeline p;
        for (const auto& jn : j.value("nodes", json::array())) {
            PipelineNode n;
            n.id = jn.at("id").get<std::string>();
            n.op = jn.at("op").get<std::string>();
            const json args = jn.value("args", json::object());
            for (const auto& [k, v] : args.items()) n.args[k] = binding_from_json(v);
            p.nodes.push_back(std::move(n));
        }
        const json outs = j.value("outputs", json::object());
        for (const auto& [name, src] : outs.items())
            p.outputs[name] = {src.at("node").get<std::string>(),
                               src.value("output", std::string("value"))};
        if (j.contains("unused_inputs"))
            p.unused_inputs = j["unused_inputs"].get<std::vector<std::string>>();
        return p;
    } catch (const json::exception& e) {
        throw Error("InvalidArtifact", std::string("malformed pipeline: ") + e.what());
    }
}

std::string body_file_name(SkillKind kind) {
    return kind == SkillKind::type1 ? "program.sk" : "pipeline.json";
}

std::string body_to_bytes(const SkillArtifact& a) {
    if (a.is_type1()) return dsl::format_program(a.program());
    return pipeline_to_json(a.pipeline(), /*pretty=*/true);
}

std::string artifact_digest(const SkillArtifact& a) {
    Sha256 h;
    h.update("aurakit-artifact-v1\n");
    h.update(manifest_to_json(a.manifest, /*pretty=*/false));
    h.update("\n");
    h.update(a.is_type1() ? "type1\n" : "type2\n");
    h.update(body_to_bytes(a));
    auto d = h.finish();
    return to_hex(d.data(), d.size());
}

SkillArtifact load_artifact_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::path root(dir);
    if (!fs::exists(root / "skill.json"))
        throw Error("InvalidArtifact", "missing skill.json in " + dir);
    SkillArtifact a;
    a.manifest = manifest_from_json(read_file(root / "skill.json"));
    fs::path body = root / body_file_name(a.manifest.skill_kind);
    if (!fs::exists(body))
        throw Error("InvalidArtifact", "missing " + body.filename().string() + " in " + dir);
    std::string bytes = normalize_newlines(read_file(body));
    if (a.manifest.skill_kind == SkillKind::type1) {
        auto parsed = dsl::parse_program(bytes);
        if (!parsed.program) {
            std::string msg = "program.sk does not parse";
            if (!parsed.diagnostics.empty())
                msg += ": " + dsl::render_diagnostic(parsed.diagnostics.front(),
                                                     body.string());
            throw Error("InvalidArtifact", msg);
        }
        a.body = std::move(*parsed.program);
    } else {
        a.body = pipeline_from_json(bytes);
    }
    a.digest = artifact_digest(a);
    return a;
}

void save_artifact_dir(const SkillArtifact& a, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    write_file(fs::path(dir) / "skill.json", manifest_to_json(a.manifest, /*pretty=*/true));
    write_file(fs::path(dir) / body_file_name(a.manifest.skill_kind), body_to_bytes(a));
}

namespace {

Value coerce_argument(const ParamSpec& p, const Value& v) {
    switch (p.value_type) {
        case ValueType::int_type:
            if (v.is_int()) return v;
            if (v.is_real() && v.as_real() == std::int64_t(v.as_real()))
                return Value(std::int64_t(v.as_real()));
            throw Error("TypeMismatch", "parameter '" + p.name + "' expects an int");
        case ValueType::real:
            if (v.is_number()) return Value(v.as_real());
            throw Error("TypeMismatch", "parameter '" + p.name + "' expects a real");
        case ValueType::text:
        case ValueType::choice:
            if (v.is_text()) return v;
            throw Error("TypeMismatch", "parameter '" + p.name + "' expects text");
        case ValueType::boolean:
            if (v.is_bool()) return v;
            throw Error("TypeMismatch", "parameter '" + p.name + "' expects a bool");
    }
    throw Error("TypeMismatch", "unreachable");
}

void check_constraint(const ParamSpec& p, const Value& v) {
    if (p.range) {
        double d = v.as_real();
        if (d < p.range->first || d > p.range->second)
            throw Error("ConstraintViolation",
                        "parameter '" + p.name + "' = " + v.str() + " is outside [" +
                            fmt_double(p.range->first) + ", " + fmt_double(p.range->second) + "]");
    }
    if (p.value_type == ValueType::choice) {
        bool found = false;
        for (const auto& c : p.choices) found |= (c == v.as_text());
        if (!found)
            throw Error("ConstraintViolation",
                        "parameter '" + p.name + "' = " + v.str() + " is not in the allowed set");
    }
}

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, Value>& values) {
    if (!e) return e;
    switch (e->kind) {
        case Expr::Kind::param_ref: {
            auto it = values.find(e->name);
            if (it == values.end())
                throw Error("MissingArgument", "no value for parameter '" + e->name + "'");
            return Expr::make_literal(it->second, e->span);
        }
        case Expr::Kind::unary: {
            auto l = substitute(e->lhs, values);
            return l == e->lhs ? e : Expr::make_unary(e->unary_op, l, e->span);
        }
        case Expr::Kind::binary: {
            auto l = substitute(e->lhs, values);
            auto r = substitute(e->rhs, values);
            return (l == e->lhs && r == e->rhs) ? e
                                                : Expr::make_binary(e->binary_op, l, r, e->span);
        }
        default:
            return e;
    }
}

Step substitute_step(const Step& s, const std::map<std::string, Value>& values) {
    Step out = s;
    if (s.value) out.value = substitute(s.value, values);
    if (s.condition) out.condition = substitute(s.condition, values);
    out.then_steps.clear();
    for (const auto& t : s.then_steps) out.then_steps.push_back(substitute_step(t, values));
    out.else_steps.clear();
    for (const auto& t : s.else_steps) out.else_steps.push_back(substitute_step(t, values));
    out.body.clear();
    for (const auto& t : s.body) out.body.push_back(substitute_step(t, values));
    out.call_args.clear();
    for (const auto& [k, v] : s.call_args) out.call_args.emplace_back(k, substitute(v, values));
    return out;
}

}  // namespace

std::map<std::string, Value> resolve_arguments(const SkillManifest& manifest,
                                               const std::map<std::string, Value>& args) {
    for (const auto& [name, v] : args) {
        (void)v;
        bool known = false;
        for (const auto& p : manifest.parameters) known |= (p.name == name);
        if (!known) throw Error("UnknownArgument", "skill '" + manifest.name +
                                                       "' has no parameter '" + name + "'");
    }
    std::map<std::string, Value> values;
    for (const auto& p : manifest.parameters) {
        auto it = args.find(p.name);
        if (it != args.end()) {
            Value v = coerce_argument(p, it->second);
            check_constraint(p, v);
            values[p.name] = std::move(v);
        } else if (p.default_value) {
            Value v = coerce_argument(p, *p.default_value);
            check_constraint(p, v);
            values[p.name] = std::move(v);
        } else {
            throw Error("MissingArgument",
                        "parameter '" + p.name + "' has no value and no default");
        }
    }
    return values;
}

BoundProgram bind_parameters(const SkillArtifact& artifact,
                             const std::map<std::string, Value>& args) {
    if (!artifact.is_type1())
        throw Error("NotType1", "bind_parameters applies to type1 skills");
    BoundProgram bp;
    bp.skill_name = artifact.manifest.name;
    bp.skill_version = artifact.manifest.version;
    bp.model_id = artifact.manifest.environment_model;
    bp.arguments = resolve_arguments(artifact.manifest, args);
    for (const auto& s : artifact.program().steps)
        bp.program.steps.push_back(substitute_step(s, bp.arguments));
    return bp;
}

}  // namespace aurakit::model
