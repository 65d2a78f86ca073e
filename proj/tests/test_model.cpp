#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aurakit/core/error.hpp"
#include "aurakit/dsl/formatter.hpp"
#include "aurakit/dsl/parser.hpp"
#include "aurakit/model/artifact.hpp"
#include "aurakit/sim/simulator.hpp"
#include "fixture_paths.hpp"

using namespace aurakit;
using namespace aurakit::model;

namespace {

const std::set<std::string> kModels = {"uvvis", "sem-eds", "microct"};
const std::set<std::string> kOps = {"baseline_asls", "detect_peaks", "eds_snr"};

SkillManifest minimal_type2() {
    SkillManifest m;
    m.name = "peak-report";
    m.version = "1.2.0";
    m.skill_kind = SkillKind::type2;
    m.description = "demo";
    m.parameters.push_back({"lambda", ValueType::real, std::nullopt, Value(1e5),
                            std::make_pair(1.0, 1e9), {}});
    m.inputs.push_back({"spectrum", PayloadKind::spectrum, ""});
    m.outputs.push_back({"peaks", PayloadKind::table, ""});
    m.environment_ops = {"baseline_asls", "detect_peaks"};
    return m;
}

}  // namespace

TEST_CASE("validate_manifest: well-formed type2 passes") {
    CHECK(validate_manifest(minimal_type2(), kModels, kOps).empty());
}

TEST_CASE("validate_manifest: duplicate parameter name") {
    auto m = minimal_type2();
    m.parameters.push_back({"kv", ValueType::real, std::nullopt, std::nullopt, std::nullopt, {}});
    m.parameters.push_back({"kv", ValueType::real, std::nullopt, std::nullopt, std::nullopt, {}});
    auto diags = validate_manifest(m, kModels, kOps);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].path == "parameters[2].name");
    CHECK(diags[0].message.find("duplicate") != std::string::npos);
}

TEST_CASE("validate_manifest: unknown simulator model") {
    SkillManifest m;
    m.name = "xrd-sweep";
    m.version = "0.1.0";
    m.skill_kind = SkillKind::type1;
    m.environment_model = "xrd-sim";
    auto diags = validate_manifest(m, kModels, kOps);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].path == "environment");
    CHECK(diags[0].message.find("unknown model") != std::string::npos);
}

TEST_CASE("validate_manifest: assorted invariants") {
    auto m = minimal_type2();
    m.name = "Bad Name";
    m.version = "1.0";
    m.parameters[0].range = std::make_pair(10.0, 1.0);
    m.parameters[0].default_value = Value(1e5);
    m.dependencies.push_back({"dep", "~nope"});
    m.outputs.push_back({"peaks", PayloadKind::table, ""});
    m.environment_ops.push_back("mystery_op");
    auto diags = validate_manifest(m, kModels, kOps);
    std::set<std::string> paths;
    for (const auto& d : diags) paths.insert(d.path);
    CHECK(paths.count("name"));
    CHECK(paths.count("version"));
    CHECK(paths.count("parameters[0].constraint"));
    CHECK(paths.count("dependencies[0].requirement"));
    CHECK(paths.count("outputs[1].name"));
    CHECK(paths.count("environment[2]"));
}

TEST_CASE("validate_manifest: default must satisfy its constraint") {
    auto m = minimal_type2();
    m.parameters[0].default_value = Value(1e10);
    auto diags = validate_manifest(m, kModels, kOps);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].path == "parameters[0].default");

    m = minimal_type2();
    m.parameters.push_back({"mode", ValueType::choice, std::nullopt, Value("no-such"),
                            std::nullopt, {"a", "b"}});
    diags = validate_manifest(m, kModels, kOps);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].message.find("allowed set") != std::string::npos);
}

TEST_CASE("bind_parameters: defaults, ranges and type errors") {
    auto artifact = load_artifact_dir(tests::fixture_path("skills/uvvis-acquire"));

    auto bound = bind_parameters(artifact, {});
    CHECK(bound.arguments.at("integration_ms") == Value(std::int64_t(100)));
    CHECK(bound.arguments.at("wavelength_start") == Value(300.0));
    CHECK(bound.model_id == "uvvis");

    CHECK_THROWS_WITH_AS(bind_parameters(artifact, {{"integration_ms", Value(50000)}}),
                         doctest::Contains("outside"), Error);

    try {
        bind_parameters(artifact, {{"mode", Value("fluorescence")}});
        FAIL("expected ConstraintViolation");
    } catch (const Error& e) {
        CHECK(e.code() == "ConstraintViolation");
    }

    try {
        bind_parameters(artifact, {{"mode", Value(std::int64_t(3))}});
        FAIL("expected TypeMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == "TypeMismatch");
    }

    try {
        bind_parameters(artifact, {{"zoom", Value(1)}});
        FAIL("expected UnknownArgument");
    } catch (const Error& e) {
        CHECK(e.code() == "UnknownArgument");
    }
}

TEST_CASE("bind_parameters: missing required argument") {
    auto artifact = load_artifact_dir(tests::fixture_path("skills/uvvis-acquire"));
    artifact.manifest.parameters[0].default_value.reset();
    try {
        bind_parameters(artifact, {});
        FAIL("expected MissingArgument");
    } catch (const Error& e) {
        CHECK(e.code() == "MissingArgument");
    }
}

TEST_CASE("bind_parameters: substituted program matches a hand-built expectation") {
    auto artifact = load_artifact_dir(tests::fixture_path("skills/sem-image"));
    auto bound = bind_parameters(
        artifact, {{"kv", Value(20.0)}, {"mag", Value(5000.0)}, {"focus", Value(50.0)}});

    // the set steps now carry literals
    const auto& steps = bound.program.steps;
    bool saw_kv = false, saw_mag = false;
    for (const auto& s : steps) {
        if (s.kind == Step::Kind::set_value && s.widget == "accel_voltage") {
            CHECK(s.value->kind == Expr::Kind::literal);
            CHECK(s.value->literal == Value(20.0));
            saw_kv = true;
        }
        if (s.kind == Step::Kind::set_value && s.widget == "magnification") {
            CHECK(s.value->literal == Value(5000.0));
            saw_mag = true;
        }
    }
    CHECK(saw_kv);
    CHECK(saw_mag);

    // binding an already-closed program is the identity
    SkillArtifact closed = artifact;
    closed.body = bound.program;
    closed.manifest.parameters.clear();
    auto again = bind_parameters(closed, {});
    CHECK(program_equal(again.program, bound.program));
}

TEST_CASE("artifact digest: deterministic, avalanche, round trip") {
    auto artifact = load_artifact_dir(tests::fixture_path("skills/uvvis-acquire"));
    CHECK(artifact.digest.size() == 64);
    CHECK(artifact_digest(artifact) == artifact.digest);

    auto tweaked = artifact;
    tweaked.manifest.description += "!";
    CHECK(artifact_digest(tweaked) != artifact.digest);

    // serialize -> reload -> same digest
    auto dir = std::filesystem::temp_directory_path() / "aurakit-artifact-rt";
    std::filesystem::remove_all(dir);
    save_artifact_dir(artifact, dir.string());
    auto back = load_artifact_dir(dir.string());
    CHECK(back.digest == artifact.digest);
    CHECK(manifest_to_json(back.manifest) == manifest_to_json(artifact.manifest));
    CHECK(back.is_type1());
    CHECK(program_equal(back.program(), artifact.program()));
    std::filesystem::remove_all(dir);
}

TEST_CASE("pipeline JSON round trip") {
    auto artifact = load_artifact_dir(tests::fixture_path("skills/uvvis-peak-report"));
    REQUIRE_FALSE(artifact.is_type1());
    const auto& p = artifact.pipeline();
    REQUIRE(p.nodes.size() == 2);
    CHECK(p.nodes[0].op == "baseline_asls");
    CHECK(p.nodes[1].args.at("spectrum").kind == PipelineBinding::Kind::node_output);

    auto back = pipeline_from_json(pipeline_to_json(p));
    CHECK(pipeline_equal(back, p));
}

TEST_CASE("manifest JSON rejects malformed input") {
    CHECK_THROWS_AS(manifest_from_json("not json"), Error);
    CHECK_THROWS_AS(manifest_from_json("{\"name\": \"x\"}"), Error);
    CHECK_THROWS_AS(manifest_from_json("{\"name\":\"x\",\"version\":\"1.0.0\",\"kind\":\"type9\"}"),
                    Error);
}

TEST_CASE("all shipped fixture skills validate cleanly") {
    for (const auto& entry :
         std::filesystem::directory_iterator(tests::fixture_path("skills"))) {
        auto artifact = load_artifact_dir(entry.path().string());
        auto diags = validate_manifest(artifact.manifest, sim::known_models(),
                                       {"baseline_asls", "detect_peaks", "eds_snr"});
        for (const auto& d : diags) {
            CAPTURE(entry.path().string());
            CAPTURE(d.path);
            CAPTURE(d.message);
            CHECK(false);
        }
    }
}
