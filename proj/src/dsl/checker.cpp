#include "aurakit/dsl/checker.hpp"

#include <map>
#include <set>

#include "aurakit/dsl/formatter.hpp"

namespace aurakit::dsl {

namespace {

using model::Expr;
using model::ExprPtr;
using model::ParamSpec;
using model::Step;
using model::ValueType;
using sim::InstrumentDescriptor;
using sim::WidgetKind;

// nullopt = unknown (treated as compatible with everything)
using MaybeType = std::optional<ValueType>;

struct Checker {
    const InstrumentDescriptor& desc;
    const std::vector<ParamSpec>* params;
    std::vector<Diagnostic> diags;
    std::map<std::string, ValueType> var_types;  // across all paths; typing only

    void error(const model::SourceSpan& span, const std::string& code,
               const std::string& msg) {
        diags.push_back({Severity::error, span, code, msg});
    }
    void warn(const model::SourceSpan& span, const std::string& code, const std::string& msg) {
        diags.push_back({Severity::warning, span, code, msg});
    }

    const ParamSpec* find_param(const std::string& name) const {
        if (!params) return nullptr;
        for (const auto& p : *params)
            if (p.name == name) return &p;
        return nullptr;
    }

    static bool numeric(MaybeType t) {
        return !t || *t == ValueType::int_type || *t == ValueType::real;
    }

    MaybeType widget_value_type(const std::string& id, const model::SourceSpan& span) {
        const auto* w = desc.find_widget(id);
        if (!w) {
            error(span, "unknown-widget", "unknown widget '" + id + "'");
            return std::nullopt;
        }
        auto t = w->value_type();
        if (!t) {
            error(span, "not-readable",
                  "widget '" + id + "' (" + widget_kind_name(w->kind) + ") has no readable value");
            return std::nullopt;
        }
        return *t;
    }

    MaybeType check_expr(const ExprPtr& e, const std::set<std::string>& defined) {
        switch (e->kind) {
            case Expr::Kind::literal: {
                const auto& v = e->literal;
                if (v.is_int()) return ValueType::int_type;
                if (v.is_real()) return ValueType::real;
                if (v.is_bool()) return ValueType::boolean;
                return ValueType::text;
            }
            case Expr::Kind::param_ref: {
                if (params) {
                    const auto* p = find_param(e->name);
                    if (!p) {
                        error(e->span, "unknown-param",
                              "'" + e->name + "' is not a declared parameter");
                        return std::nullopt;
                    }
                    if (p->value_type == ValueType::choice) return ValueType::text;
                    return p->value_type;
                }
                return std::nullopt;
            }
            case Expr::Kind::var_ref: {
                if (!defined.count(e->name)) {
                    error(e->span, "read-after-use",
                          "variable '" + e->name +
                              "' is not bound on every path reaching this use");
                    return std::nullopt;
                }
                auto it = var_types.find(e->name);
                return it == var_types.end() ? MaybeType{} : MaybeType{it->second};
            }
            case Expr::Kind::widget_ref:
                return widget_value_type(e->name, e->span);
            case Expr::Kind::unary: {
                auto t = check_expr(e->lhs, defined);
                if (e->unary_op == model::UnaryOp::not_) {
                    if (t && *t != ValueType::boolean)
                        error(e->span, "type-mismatch", "'not' needs a boolean operand");
                    return ValueType::boolean;
                }
                if (!numeric(t))
                    error(e->span, "type-mismatch", "negation needs a numeric operand");
                return t;
            }
            case Expr::Kind::binary:
                return check_binary(e, defined);
        }
        return std::nullopt;
    }

    MaybeType check_binary(const ExprPtr& e, const std::set<std::string>& defined) {
        using model::BinaryOp;
        auto lt = check_expr(e->lhs, defined);
        auto rt = check_expr(e->rhs, defined);
        switch (e->binary_op) {
            case BinaryOp::add:
            case BinaryOp::sub:
            case BinaryOp::mul:
            case BinaryOp::div: {
                if (!numeric(lt) || !numeric(rt)) {
                    error(e->span, "type-mismatch", "arithmetic needs numeric operands");
                    return std::nullopt;
                }
                if (e->binary_op == BinaryOp::div) {
                    if (e->rhs->kind == Expr::Kind::literal && e->rhs->literal.is_number() &&
                        e->rhs->literal.as_real() == 0.0)
                        error(e->rhs->span, "div-by-zero", "division by a literal zero");
                    return ValueType::real;
                }
                if (lt && rt && *lt == ValueType::int_type && *rt == ValueType::int_type)
                    return ValueType::int_type;
                return ValueType::real;
            }
            case BinaryOp::lt:
            case BinaryOp::le:
            case BinaryOp::gt:
            case BinaryOp::ge:
                if (!numeric(lt) || !numeric(rt))
                    error(e->span, "type-mismatch", "ordering comparison needs numeric operands");
                return ValueType::boolean;
            case BinaryOp::eq:
            case BinaryOp::ne: {
                bool ok = !lt || !rt || (numeric(lt) && numeric(rt)) || *lt == *rt;
                if (!ok)
                    error(e->span, "type-mismatch",
                          "cannot compare " + model::value_type_name(*lt) + " with " +
                              model::value_type_name(*rt));
                return ValueType::boolean;
            }
            case BinaryOp::and_:
            case BinaryOp::or_:
                if ((lt && *lt != ValueType::boolean) || (rt && *rt != ValueType::boolean))
                    error(e->span, "type-mismatch", "boolean connective needs boolean operands");
                return ValueType::boolean;
        }
        return std::nullopt;
    }

    void check_condition(const ExprPtr& e, const std::set<std::string>& defined,
                         const char* what) {
        auto t = check_expr(e, defined);
        if (t && *t != ValueType::boolean)
            error(e->span, "type-mismatch", std::string(what) + " condition must be boolean");
    }

    // returns the set of variables defined after the steps
    std::set<std::string> check_steps(const std::vector<Step>& steps,
                                      std::set<std::string> defined) {
        for (const auto& s : steps) defined = check_step(s, std::move(defined));
        return defined;
    }

    std::set<std::string> check_step(const Step& s, std::set<std::string> defined) {
        switch (s.kind) {
            case Step::Kind::click: {
                const auto* w = desc.find_widget(s.widget);
                if (!w)
                    error(s.span, "unknown-widget", "unknown widget '" + s.widget + "'");
                else if (w->kind != WidgetKind::button)
                    error(s.span, "kind-mismatch",
                          "click targets a " + widget_kind_name(w->kind) + ", not a button");
                break;
            }
            case Step::Kind::set_value: {
                const auto* w = desc.find_widget(s.widget);
                auto vt = check_expr(s.value, defined);
                if (!w) {
                    error(s.span, "unknown-widget", "unknown widget '" + s.widget + "'");
                } else if (!w->writable()) {
                    error(s.span, "not-writable",
                          "widget '" + s.widget + "' (" + widget_kind_name(w->kind) +
                              ") is not writable");
                } else if (w->kind == WidgetKind::numeric_field) {
                    if (!numeric(vt))
                        error(s.span, "type-mismatch", "numeric field needs a numeric value");
                } else if (w->kind == WidgetKind::toggle) {
                    if (vt && *vt != ValueType::boolean)
                        error(s.span, "type-mismatch", "toggle needs a boolean value");
                } else if (w->kind == WidgetKind::text_field) {
                    if (vt && *vt != ValueType::text)
                        error(s.span, "type-mismatch", "text field needs a text value");
                }
                break;
            }
            case Step::Kind::select: {
                const auto* w = desc.find_widget(s.widget);
                auto vt = check_expr(s.value, defined);
                if (!w) {
                    error(s.span, "unknown-widget", "unknown widget '" + s.widget + "'");
                } else if (w->kind != WidgetKind::dropdown) {
                    error(s.span, "kind-mismatch",
                          "select targets a " + widget_kind_name(w->kind) + ", not a dropdown");
                } else {
                    if (vt && *vt != ValueType::text)
                        error(s.span, "type-mismatch", "select needs a text value");
                    if (s.value->kind == Expr::Kind::literal && s.value->literal.is_text()) {
                        bool found = false;
                        for (const auto& o : w->options) found |= (o == s.value->literal.as_text());
                        if (!found)
                            error(s.value->span, "unknown-option",
                                  "'" + s.value->literal.as_text() + "' is not an option of '" +
                                      s.widget + "'");
                    }
                }
                break;
            }
            case Step::Kind::read: {
                auto t = widget_value_type(s.widget, s.span);
                if (t) var_types[s.variable] = *t;
                defined.insert(s.variable);
                break;
            }
            case Step::Kind::wait_until:
                check_condition(s.condition, defined, "wait_until");
                if (s.poll_ms < 1)
                    error(s.span, "bad-wait", "poll interval must be >= 1 ms");
                if (s.poll_ms > s.timeout_ms)
                    error(s.span, "bad-wait", "poll interval exceeds the timeout");
                break;
            case Step::Kind::assert_cond:
                check_condition(s.condition, defined, "assert");
                break;
            case Step::Kind::branch: {
                check_condition(s.condition, defined, "if");
                auto after_then = check_steps(s.then_steps, defined);
                auto after_else = check_steps(s.else_steps, defined);
                std::set<std::string> merged;
                for (const auto& v : after_then)
                    if (after_else.count(v)) merged.insert(v);
                return merged;
            }
            case Step::Kind::repeat_until: {
                if (s.max_iter < 1)
                    error(s.span, "bad-max-iter", "max iteration count must be >= 1");
                auto after_body = check_steps(s.body, defined);
                check_condition(s.condition, after_body, "until");
                if (s.condition->kind == Expr::Kind::literal && s.condition->literal.is_bool() &&
                    !s.condition->literal.as_bool())
                    warn(s.span, "loop-never-exits",
                         "exit condition is constant false; the loop always runs max "
                         "iterations");
                return after_body;
            }
            case Step::Kind::export_data: {
                if (!desc.find_export(s.dataset))
                    error(s.span, "unknown-dataset",
                          "model '" + desc.model_id + "' exports no dataset '" + s.dataset + "'");
                auto t = check_expr(s.value, defined);
                if (t && *t != ValueType::text)
                    error(s.value->span, "type-mismatch", "export path must be text");
                break;
            }
            case Step::Kind::call:
                for (const auto& [name, value] : s.call_args) {
                    (void)name;
                    check_expr(value, defined);
                }
                break;
        }
        return defined;
    }
};

}  // namespace

std::vector<Diagnostic> check_program(const model::Type1Program& program,
                                      const InstrumentDescriptor& descriptor,
                                      const std::vector<model::ParamSpec>* params) {
    Checker c{descriptor, params, {}, {}};
    c.check_steps(program.steps, {});
    return c.diags;
}

}  // namespace aurakit::dsl
