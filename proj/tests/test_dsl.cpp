#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "aurakit/core/text.hpp"
#include "aurakit/dsl/checker.hpp"
#include "aurakit/dsl/formatter.hpp"
#include "aurakit/dsl/parser.hpp"
#include "aurakit/model/artifact.hpp"
#include "aurakit/sim/simulator.hpp"
#include "ast_fuzzer.hpp"
#include "fixture_paths.hpp"

using namespace aurakit;
using namespace aurakit::dsl;
using namespace aurakit::model;

namespace {

Type1Program parse_ok(const std::string& src) {
    auto r = parse_program(src);
    if (!r.program) {
        for (const auto& d : r.diagnostics) MESSAGE(render_diagnostic(d, "<src>"));
        REQUIRE(r.program);
    }
    return *r.program;
}

}  // namespace

TEST_CASE("parse: empty file is a valid empty program") {
    auto p = parse_ok("");
    CHECK(p.steps.empty());
    CHECK(parse_ok("\n\n# only a comment\n").steps.empty());
}

TEST_CASE("parse: wait_until golden AST") {
    auto p = parse_ok("wait_until widget(status) == \"ready\" timeout 5000 poll 100\n");
    REQUIRE(p.steps.size() == 1);
    const auto& s = p.steps[0];
    CHECK(s.kind == Step::Kind::wait_until);
    CHECK(s.timeout_ms == 5000);
    CHECK(s.poll_ms == 100);
    REQUIRE(s.condition->kind == Expr::Kind::binary);
    CHECK(s.condition->binary_op == BinaryOp::eq);
    CHECK(s.condition->lhs->kind == Expr::Kind::widget_ref);
    CHECK(s.condition->lhs->name == "status");
    CHECK(s.condition->rhs->literal == Value("ready"));
}

TEST_CASE("parse: click arity violation points at the first bad token") {
    auto r = parse_program("click\n");
    CHECK_FALSE(r.program);
    REQUIRE(r.diagnostics.size() >= 1);
    CHECK(r.diagnostics[0].severity == Severity::error);
    CHECK(r.diagnostics[0].span.line == 1);
}

TEST_CASE("parse: spans locate tokens precisely") {
    auto r = parse_program("click ok\nset x = @\n");
    CHECK_FALSE(r.program);
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].span.line == 2);
    CHECK(r.diagnostics[0].span.column == 9);
}

TEST_CASE("parse: operator precedence and folding of negative literals") {
    auto p = parse_ok("assert 1 + 2 * 3 < -4 / 2 or not true\n");
    const auto& c = p.steps[0].condition;
    REQUIRE(c->kind == Expr::Kind::binary);
    CHECK(c->binary_op == BinaryOp::or_);
    const auto& cmp = c->lhs;
    CHECK(cmp->binary_op == BinaryOp::lt);
    CHECK(cmp->lhs->binary_op == BinaryOp::add);
    CHECK(cmp->lhs->rhs->binary_op == BinaryOp::mul);
    CHECK(cmp->rhs->binary_op == BinaryOp::div);
    CHECK(cmp->rhs->lhs->literal == Value(std::int64_t(-4)));
    CHECK(c->rhs->kind == Expr::Kind::unary);
}

TEST_CASE("parse: adjacent string literals concatenate") {
    auto p = parse_ok("set note = \"abc\" \"def\"\n");
    CHECK(p.steps[0].value->literal == Value("abcdef"));
}

TEST_CASE("parse: dashed identifiers need spaced subtraction") {
    auto p = parse_ok("assert a-b == 1\n");  // a-b is one identifier
    CHECK(p.steps[0].condition->lhs->kind == Expr::Kind::var_ref);
    CHECK(p.steps[0].condition->lhs->name == "a-b");

    auto q = parse_ok("assert a - b == 1\n");
    CHECK(q.steps[0].condition->lhs->kind == Expr::Kind::binary);
    CHECK(q.steps[0].condition->lhs->binary_op == BinaryOp::sub);
}

TEST_CASE("parse: line continuation with a trailing backslash") {
    auto p = parse_ok("assert widget(status) == \\\n    \"ready\"\n");
    CHECK(p.steps[0].kind == Step::Kind::assert_cond);
}

TEST_CASE("format: canonical nested-branch indentation") {
    auto p = parse_ok(
        "if widget(a) == 1 {\n"
        "      if widget(b) == 2 {\n"
        "   if widget(c) == 3 {\n"
        "  click deep\n"
        "     } else {\n"
        "       click shallow\n"
        " }\n"
        "  }\n"
        "}\n");
    std::string expect =
        "if widget(a) == 1 {\n"
        "  if widget(b) == 2 {\n"
        "    if widget(c) == 3 {\n"
        "      click deep\n"
        "    } else {\n"
        "      click shallow\n"
        "    }\n"
        "  }\n"
        "}\n";
    CHECK(format_program(p) == expect);
}

TEST_CASE("format: stable and idempotent on fixtures") {
    for (const char* name : {"uvvis-acquire", "sem-image", "eds-quality", "sem-survey"}) {
        auto artifact = load_artifact_dir(tests::fixture_path("skills/") + name);
        std::string once = format_program(artifact.program());
        auto reparsed = parse_ok(once);
        CHECK(program_equal(reparsed, artifact.program()));
        CHECK(format_program(reparsed) == once);
    }
}

TEST_CASE("format/parse round trip over fuzzed ASTs") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        tests::AstFuzzer fuzz(seed);
        auto ast = fuzz.program();
        std::string text = format_program(ast);
        auto r = parse_program(text);
        if (!r.program) {
            CAPTURE(seed);
            CAPTURE(text);
            for (const auto& d : r.diagnostics) MESSAGE(render_diagnostic(d, "<fuzz>"));
            REQUIRE(r.program);
        }
        if (!program_equal(*r.program, ast)) {
            CAPTURE(seed);
            CAPTURE(text);
            CHECK(program_equal(*r.program, ast));
        }
    }
}

TEST_CASE("format: long literals wrap at 120 columns") {
    tests::AstFuzzer fuzz(4441);
    int long_lines_checked = 0;
    for (std::uint64_t seed = 500; seed < 560; ++seed) {
        tests::AstFuzzer f(seed);
        auto ast = f.program();
        std::string text = format_program(ast);
        for (const auto& line : split_lines(text)) {
            CHECK(line.size() <= 120);
            if (line.size() > 100) ++long_lines_checked;
        }
        auto r = parse_program(text);
        REQUIRE(r.program);
        CHECK(program_equal(*r.program, ast));
    }
    CHECK(long_lines_checked > 0);  // the sample actually exercised wrapping
}

TEST_CASE("diagnostic rendering format") {
    Diagnostic d{Severity::error, {3, 7, 2}, "syntax", "expected end of line"};
    CHECK(render_diagnostic(d, "prog.sk") == "prog.sk:3:7: error[syntax]: expected end of line");
}

TEST_CASE("checker: spec examples against the UV-vis descriptor") {
    auto desc = sim::descriptor_for("uvvis");

    auto bad = parse_ok("click nonexistent\n");
    auto diags = check_program(bad, desc);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == "unknown-widget");

    auto not_writable = parse_ok("set start_scan = 3\n");
    diags = check_program(not_writable, desc);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == "not-writable");

    auto click_readout = parse_ok("click status\n");
    diags = check_program(click_readout, desc);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == "kind-mismatch");
}

TEST_CASE("checker: the full SEM fixture skill checks clean") {
    auto artifact = load_artifact_dir(tests::fixture_path("skills/sem-image"));
    auto desc = sim::descriptor_for("sem-eds");
    auto diags = check_program(artifact.program(), desc, &artifact.manifest.parameters);
    for (const auto& d : diags) MESSAGE(render_diagnostic(d, "sem-image/program.sk"));
    CHECK(diags.empty());
}

TEST_CASE("checker: every shipped type1 fixture checks clean against its model") {
    namespace fs = std::filesystem;
    int checked = 0;
    for (const auto& entry : fs::directory_iterator(tests::fixture_path("skills"))) {
        auto artifact = load_artifact_dir(entry.path().string());
        if (!artifact.is_type1()) continue;
        auto desc = sim::descriptor_for(artifact.manifest.environment_model);
        auto diags = check_program(artifact.program(), desc, &artifact.manifest.parameters);
        for (const auto& d : diags)
            MESSAGE((entry.path().string() + ": " + render_diagnostic(d, "program.sk")));
        CHECK(diags.empty());
        ++checked;
    }
    CHECK(checked == 10);
}

TEST_CASE("checker: type errors and degenerate constructs") {
    auto desc = sim::descriptor_for("uvvis");

    auto p = parse_ok("set wavelength_start = \"text\"\n");
    auto diags = check_program(p, desc);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == "type-mismatch");

    p = parse_ok("assert widget(status) == 5\n");
    CHECK(check_program(p, desc)[0].code == "type-mismatch");

    p = parse_ok("assert 1 / 0 == 1\n");
    CHECK(check_program(p, desc)[0].code == "div-by-zero");

    p = parse_ok("wait_until widget(status) == \"x\" timeout 100 poll 500\n");
    CHECK(check_program(p, desc)[0].code == "bad-wait");

    p = parse_ok("repeat {\n  click start_scan\n} until false max 3\n");
    diags = check_program(p, desc);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].severity == Severity::warning);
    CHECK(diags[0].code == "loop-never-exits");

    p = parse_ok("export nope to \"f.csv\"\n");
    CHECK(check_program(p, desc)[0].code == "unknown-dataset");

    p = parse_ok("select mode = \"infrared\"\n");
    CHECK(check_program(p, desc)[0].code == "unknown-option");

    p = parse_ok("assert widget(spectrum_preview) == \"x\"\n");
    CHECK(check_program(p, desc)[0].code == "not-readable");

    p = parse_ok("set wavelength_start = $kv\n");
    std::vector<ParamSpec> no_params;
    CHECK(check_program(p, desc, &no_params)[0].code == "unknown-param");
}

TEST_CASE("checker: read-after-use on any path is rejected") {
    auto desc = sim::descriptor_for("uvvis");

    // defined on only one branch arm
    auto p = parse_ok(
        "if widget(progress) >= 0 {\n"
        "  read v = widget(status)\n"
        "}\n"
        "assert v == \"complete\"\n");
    auto diags = check_program(p, desc);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == "read-after-use");

    // defined in both arms: fine
    p = parse_ok(
        "if widget(progress) >= 0 {\n"
        "  read v = widget(status)\n"
        "} else {\n"
        "  read v = widget(status)\n"
        "}\n"
        "assert v == \"complete\"\n");
    CHECK(check_program(p, desc).empty());

    // bound by the loop body (runs at least once), used in the exit condition
    p = parse_ok(
        "repeat {\n"
        "  read v = widget(status)\n"
        "} until v == \"complete\" max 5\n"
        "assert v == \"idle\" or v == \"complete\"\n");
    CHECK(check_program(p, desc).empty());

    // use before the read inside the body fails on the first iteration
    p = parse_ok(
        "repeat {\n"
        "  assert v == \"x\"\n"
        "  read v = widget(status)\n"
        "} until true max 2\n");
    diags = check_program(p, desc);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == "read-after-use");
}

namespace {

// brute-force oracle: walk every control-flow path (branch arms both ways,
// loop body exactly once) and flag a use not dominated by a read
bool paths_have_violation(const std::vector<Step>& steps, std::set<std::string> defined);

void collect_vars(const ExprPtr& e, std::vector<std::string>& out) {
    if (!e) return;
    if (e->kind == Expr::Kind::var_ref) out.push_back(e->name);
    collect_vars(e->lhs, out);
    collect_vars(e->rhs, out);
}

bool uses_undefined(const ExprPtr& e, const std::set<std::string>& defined) {
    std::vector<std::string> vars;
    collect_vars(e, vars);
    for (const auto& v : vars)
        if (!defined.count(v)) return true;
    return false;
}

bool paths_have_violation(const std::vector<Step>& steps, std::set<std::string> defined) {
    if (steps.empty()) return false;
    const Step& s = steps.front();
    std::vector<Step> rest(steps.begin() + 1, steps.end());

    auto continue_with = [&](std::set<std::string> def) {
        return paths_have_violation(rest, std::move(def));
    };

    switch (s.kind) {
        case Step::Kind::read: {
            auto def = defined;
            def.insert(s.variable);
            return continue_with(def);
        }
        case Step::Kind::set_value:
        case Step::Kind::select:
        case Step::Kind::export_data:
            if (uses_undefined(s.value, defined)) return true;
            return continue_with(defined);
        case Step::Kind::wait_until:
        case Step::Kind::assert_cond:
            if (uses_undefined(s.condition, defined)) return true;
            return continue_with(defined);
        case Step::Kind::branch: {
            if (uses_undefined(s.condition, defined)) return true;
            // then path
            std::vector<Step> then_path = s.then_steps;
            then_path.insert(then_path.end(), rest.begin(), rest.end());
            // walking each arm followed by the continuation covers both paths
            std::vector<Step> else_path = s.else_steps;
            else_path.insert(else_path.end(), rest.begin(), rest.end());
            return paths_have_violation(then_path, defined) ||
                   paths_have_violation(else_path, defined);
        }
        case Step::Kind::repeat_until: {
            std::vector<Step> body_then_cond = s.body;
            Step cond_probe;
            cond_probe.kind = Step::Kind::assert_cond;
            cond_probe.condition = s.condition;
            body_then_cond.push_back(cond_probe);
            body_then_cond.insert(body_then_cond.end(), rest.begin(), rest.end());
            return paths_have_violation(body_then_cond, defined);
        }
        case Step::Kind::call:
            for (const auto& [k, v] : s.call_args) {
                (void)k;
                if (uses_undefined(v, defined)) return true;
            }
            return continue_with(defined);
        default:
            return continue_with(defined);
    }
}

}  // namespace

TEST_CASE("checker: definedness matches the brute-force path oracle") {
    auto desc = sim::descriptor_for("uvvis");
    int rejected = 0, accepted = 0;
    for (std::uint64_t seed = 1000; seed < 1250; ++seed) {
        tests::AstFuzzer fuzz(seed);
        auto ast = fuzz.program();
        bool oracle_bad = paths_have_violation(ast.steps, {});
        bool checker_bad = false;
        for (const auto& d : check_program(ast, desc))
            checker_bad |= d.code == "read-after-use";
        CAPTURE(seed);
        CHECK(checker_bad == oracle_bad);
        (oracle_bad ? rejected : accepted) += 1;
    }
    CHECK(rejected > 10);
    CHECK(accepted > 10);
}

TEST_CASE("malformed corpus: every file yields an error with a valid span") {
    namespace fs = std::filesystem;
    int n = 0;
    for (const auto& entry :
         fs::directory_iterator(tests::fixture_path("corpus/malformed"))) {
        auto text = read_file(entry.path());
        auto r = parse_program(text);
        CAPTURE(entry.path().string());
        CHECK_FALSE(r.program);
        REQUIRE_FALSE(r.diagnostics.empty());
        int n_lines = int(split_lines(text).size());
        for (const auto& d : r.diagnostics) {
            CHECK(d.span.line >= 1);
            CHECK(d.span.line <= n_lines + 1);
            CHECK(d.span.column >= 1);
            CHECK(d.span.length >= 1);
        }
        ++n;
    }
    CHECK(n >= 12);
}

TEST_CASE("valid corpus: parse-format identity") {
    namespace fs = std::filesystem;
    int n = 0;
    for (const auto& entry : fs::directory_iterator(tests::fixture_path("corpus/valid"))) {
        auto text = read_file(entry.path());
        auto r = parse_program(text);
        CAPTURE(entry.path().string());
        REQUIRE(r.program);
        auto formatted = format_program(*r.program);
        auto again = parse_program(formatted);
        REQUIRE(again.program);
        CHECK(program_equal(*again.program, *r.program));
        CHECK(format_program(*again.program) == formatted);
        ++n;
    }
    CHECK(n >= 50);
}
