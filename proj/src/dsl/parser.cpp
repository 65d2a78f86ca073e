#include "aurakit/dsl/parser.hpp"

#include "aurakit/dsl/lexer.hpp"

namespace aurakit::dsl {

namespace {

using model::BinaryOp;
using model::Expr;
using model::ExprPtr;
using model::Step;
using model::Type1Program;
using model::UnaryOp;
using model::Value;

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    ParseResult run() {
        ParseResult out;
        auto steps = parse_steps(/*top_level=*/true);
        if (failed_) {
            out.diagnostics = std::move(diags_);
            return out;
        }
        Type1Program p;
        p.steps = std::move(steps);
        out.program = std::move(p);
        return out;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool at(TokenKind k) const { return cur().kind == k; }

    bool is_kw(const char* kw) const {
        return cur().kind == TokenKind::identifier && cur().text == kw;
    }

    void fail(const std::string& msg, const model::SourceSpan& span,
              const std::string& code = "syntax") {
        if (!failed_) diags_.push_back({Severity::error, span, code, msg});
        failed_ = true;
    }

    void skip_newlines() {
        while (at(TokenKind::newline)) ++pos_;
    }

    void expect_line_end() {
        if (failed_) return;
        if (at(TokenKind::newline)) {
            ++pos_;
        } else if (!at(TokenKind::end_of_file)) {
            fail("expected end of line", cur().span);
        }
    }

    std::string expect_ident(const char* what) {
        if (failed_) return {};
        if (!at(TokenKind::identifier)) {
            fail(std::string("expected ") + what, cur().span);
            return {};
        }
        return next().text;
    }

    void expect(TokenKind k, const char* what) {
        if (failed_) return;
        if (!at(k)) {
            fail(std::string("expected ") + what, cur().span);
            return;
        }
        ++pos_;
    }

    std::int64_t expect_int(const char* what) {
        if (failed_) return 0;
        if (!at(TokenKind::int_lit)) {
            fail(std::string("expected ") + what, cur().span);
            return 0;
        }
        return next().int_value;
    }

    // steps until eof (top level) or a closing brace (block)
    std::vector<Step> parse_steps(bool top_level) {
        std::vector<Step> steps;
        while (!failed_) {
            skip_newlines();
            if (at(TokenKind::end_of_file)) {
                if (!top_level) fail("expected '}'", cur().span);
                break;
            }
            if (at(TokenKind::rbrace)) {
                if (top_level) fail("unmatched '}'", cur().span);
                break;
            }
            auto step = parse_step();
            if (failed_) break;
            steps.push_back(std::move(step));
        }
        return steps;
    }

    Step parse_step() {
        Step s;
        s.span = cur().span;
        if (!at(TokenKind::identifier)) {
            fail("expected a step keyword", cur().span);
            return s;
        }
        const std::string kw = cur().text;
        if (kw == "click") return parse_click();
        if (kw == "set") return parse_set(Step::Kind::set_value);
        if (kw == "select") return parse_set(Step::Kind::select);
        if (kw == "read") return parse_read();
        if (kw == "wait_until") return parse_wait();
        if (kw == "assert") return parse_assert();
        if (kw == "export") return parse_export();
        if (kw == "call") return parse_call();
        if (kw == "if") return parse_if();
        if (kw == "repeat") return parse_repeat();
        fail("unknown step keyword '" + kw + "'", cur().span, "unknown-step");
        return s;
    }

    Step parse_click() {
        Step s;
        s.kind = Step::Kind::click;
        s.span = next().span;
        s.widget = expect_ident("widget id");
        expect_line_end();
        return s;
    }

    Step parse_set(Step::Kind kind) {
        Step s;
        s.kind = kind;
        s.span = next().span;
        s.widget = expect_ident("widget id");
        expect(TokenKind::assign, "'='");
        s.value = parse_expr();
        expect_line_end();
        return s;
    }

    Step parse_read() {
        Step s;
        s.kind = Step::Kind::read;
        s.span = next().span;
        s.variable = expect_ident("variable name");
        expect(TokenKind::assign, "'='");
        if (!failed_ && !(is_kw("widget"))) {
            fail("expected widget(...)", cur().span);
            return s;
        }
        if (!failed_) ++pos_;
        expect(TokenKind::lparen, "'('");
        s.widget = expect_ident("widget id");
        expect(TokenKind::rparen, "')'");
        expect_line_end();
        return s;
    }

    Step parse_wait() {
        Step s;
        s.kind = Step::Kind::wait_until;
        s.span = next().span;
        s.condition = parse_expr();
        if (!failed_ && !is_kw("timeout")) fail("expected 'timeout'", cur().span);
        if (!failed_) ++pos_;
        s.timeout_ms = expect_int("timeout in ms");
        if (!failed_ && !is_kw("poll")) fail("expected 'poll'", cur().span);
        if (!failed_) ++pos_;
        s.poll_ms = expect_int("poll interval in ms");
        expect_line_end();
        return s;
    }

    Step parse_assert() {
        Step s;
        s.kind = Step::Kind::assert_cond;
        s.span = next().span;
        s.condition = parse_expr();
        expect_line_end();
        return s;
    }

    Step parse_export() {
        Step s;
        s.kind = Step::Kind::export_data;
        s.span = next().span;
        s.dataset = expect_ident("dataset id");
        if (!failed_ && !is_kw("to")) fail("expected 'to'", cur().span);
        if (!failed_) ++pos_;
        s.value = parse_expr();
        expect_line_end();
        return s;
    }

    Step parse_call() {
        Step s;
        s.kind = Step::Kind::call;
        s.span = next().span;
        s.callee = expect_ident("skill name");
        expect(TokenKind::lparen, "'('");
        if (!failed_ && !at(TokenKind::rparen)) {
            while (!failed_) {
                std::string name = expect_ident("argument name");
                expect(TokenKind::assign, "'='");
                auto value = parse_expr();
                if (failed_) break;
                s.call_args.emplace_back(std::move(name), std::move(value));
                if (at(TokenKind::comma)) {
                    ++pos_;
                    continue;
                }
                break;
            }
        }
        expect(TokenKind::rparen, "')'");
        expect_line_end();
        return s;
    }

    Step parse_if() {
        Step s;
        s.kind = Step::Kind::branch;
        s.span = next().span;
        s.condition = parse_expr();
        expect(TokenKind::lbrace, "'{'");
        expect_line_end();
        s.then_steps = parse_steps(false);
        expect(TokenKind::rbrace, "'}'");
        if (!failed_ && is_kw("else")) {
            ++pos_;
            expect(TokenKind::lbrace, "'{'");
            expect_line_end();
            s.else_steps = parse_steps(false);
            expect(TokenKind::rbrace, "'}'");
        }
        expect_line_end();
        return s;
    }

    Step parse_repeat() {
        Step s;
        s.kind = Step::Kind::repeat_until;
        s.span = next().span;
        expect(TokenKind::lbrace, "'{'");
        expect_line_end();
        s.body = parse_steps(false);
        expect(TokenKind::rbrace, "'}'");
        if (!failed_ && !is_kw("until")) fail("expected 'until'", cur().span);
        if (!failed_) ++pos_;
        s.condition = parse_expr();
        if (!failed_ && !is_kw("max")) fail("expected 'max'", cur().span);
        if (!failed_) ++pos_;
        s.max_iter = expect_int("max iteration count");
        if (!failed_ && s.max_iter < 1)
            fail("max iteration count must be >= 1", toks_[pos_ - 1].span, "bad-max-iter");
        expect_line_end();
        return s;
    }

    // --- expressions ---------------------------------------------------

    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr parse_or() {
        auto lhs = parse_and();
        while (!failed_ && is_kw("or")) {
            auto span = next().span;
            auto rhs = parse_and();
            lhs = Expr::make_binary(BinaryOp::or_, std::move(lhs), std::move(rhs), span);
        }
        return lhs;
    }

    ExprPtr parse_and() {
        auto lhs = parse_not();
        while (!failed_ && is_kw("and")) {
            auto span = next().span;
            auto rhs = parse_not();
            lhs = Expr::make_binary(BinaryOp::and_, std::move(lhs), std::move(rhs), span);
        }
        return lhs;
    }

    ExprPtr parse_not() {
        if (is_kw("not")) {
            auto span = next().span;
            auto operand = parse_not();
            return Expr::make_unary(UnaryOp::not_, std::move(operand), span);
        }
        return parse_comparison();
    }

    ExprPtr parse_comparison() {
        auto lhs = parse_additive();
        while (!failed_) {
            BinaryOp op;
            switch (cur().kind) {
                case TokenKind::eq: op = BinaryOp::eq; break;
                case TokenKind::ne: op = BinaryOp::ne; break;
                case TokenKind::lt: op = BinaryOp::lt; break;
                case TokenKind::le: op = BinaryOp::le; break;
                case TokenKind::gt: op = BinaryOp::gt; break;
                case TokenKind::ge: op = BinaryOp::ge; break;
                default: return lhs;
            }
            auto span = next().span;
            auto rhs = parse_additive();
            lhs = Expr::make_binary(op, std::move(lhs), std::move(rhs), span);
        }
        return lhs;
    }

    ExprPtr parse_additive() {
        auto lhs = parse_multiplicative();
        while (!failed_ && (at(TokenKind::plus) || at(TokenKind::minus))) {
            BinaryOp op = at(TokenKind::plus) ? BinaryOp::add : BinaryOp::sub;
            auto span = next().span;
            auto rhs = parse_multiplicative();
            lhs = Expr::make_binary(op, std::move(lhs), std::move(rhs), span);
        }
        return lhs;
    }

    ExprPtr parse_multiplicative() {
        auto lhs = parse_unary();
        while (!failed_ && (at(TokenKind::star) || at(TokenKind::slash))) {
            BinaryOp op = at(TokenKind::star) ? BinaryOp::mul : BinaryOp::div;
            auto span = next().span;
            auto rhs = parse_unary();
            lhs = Expr::make_binary(op, std::move(lhs), std::move(rhs), span);
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (at(TokenKind::minus)) {
            auto span = next().span;
            auto operand = parse_unary();
            if (failed_) return operand;
            // fold a negated numeric literal into a negative literal so the
            // canonical form round-trips
            if (operand->kind == Expr::Kind::literal && operand->literal.is_number()) {
                Value v = operand->literal.is_int() ? Value(-operand->literal.as_int())
                                                    : Value(-operand->literal.as_real());
                return Expr::make_literal(std::move(v), span);
            }
            return Expr::make_unary(UnaryOp::neg, std::move(operand), span);
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        if (failed_) return Expr::make_literal(Value(std::int64_t(0)));
        auto span = cur().span;
        switch (cur().kind) {
            case TokenKind::int_lit:
                return Expr::make_literal(Value(next().int_value), span);
            case TokenKind::real_lit:
                return Expr::make_literal(Value(next().real_value), span);
            case TokenKind::string_lit: {
                // adjacent string literals concatenate
                std::string v = next().string_value;
                while (at(TokenKind::string_lit)) v += next().string_value;
                return Expr::make_literal(Value(std::move(v)), span);
            }
            case TokenKind::param_ref:
                return Expr::make_param(next().text, span);
            case TokenKind::lparen: {
                ++pos_;
                auto e = parse_expr();
                expect(TokenKind::rparen, "')'");
                return e;
            }
            case TokenKind::identifier: {
                const std::string& name = cur().text;
                if (name == "true" || name == "false") {
                    bool b = name == "true";
                    ++pos_;
                    return Expr::make_literal(Value(b), span);
                }
                if (name == "widget") {
                    ++pos_;
                    expect(TokenKind::lparen, "'('");
                    std::string id = expect_ident("widget id");
                    expect(TokenKind::rparen, "')'");
                    return Expr::make_widget(std::move(id), span);
                }
                if (name == "not" || name == "and" || name == "or") {
                    fail("unexpected keyword in expression", span);
                    return Expr::make_literal(Value(std::int64_t(0)));
                }
                return Expr::make_var(next().text, span);
            }
            default:
                fail("expected an expression", span);
                return Expr::make_literal(Value(std::int64_t(0)));
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    bool failed_ = false;
    std::vector<Diagnostic> diags_;
};

}  // namespace

ParseResult parse_program(const std::string& source) {
    auto lexed = lex(source);
    if (has_error(lexed.diagnostics)) {
        ParseResult out;
        out.diagnostics = std::move(lexed.diagnostics);
        return out;
    }
    return Parser(std::move(lexed.tokens)).run();
}

}  // namespace aurakit::dsl
