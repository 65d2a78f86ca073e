#include "aurakit/model/program.hpp"

namespace aurakit::model {

ExprPtr Expr::make_literal(Value v, SourceSpan sp) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::literal;
    e->literal = std::move(v);
    e->span = sp;
    return e;
}

ExprPtr Expr::make_param(std::string name, SourceSpan sp) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::param_ref;
    e->name = std::move(name);
    e->span = sp;
    return e;
}

ExprPtr Expr::make_var(std::string name, SourceSpan sp) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::var_ref;
    e->name = std::move(name);
    e->span = sp;
    return e;
}

ExprPtr Expr::make_widget(std::string name, SourceSpan sp) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::widget_ref;
    e->name = std::move(name);
    e->span = sp;
    return e;
}

ExprPtr Expr::make_unary(UnaryOp op, ExprPtr operand, SourceSpan sp) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::unary;
    e->unary_op = op;
    e->lhs = std::move(operand);
    e->span = sp;
    return e;
}

ExprPtr Expr::make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceSpan sp) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::binary;
    e->binary_op = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    e->span = sp;
    return e;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Expr::Kind::literal:
            // int and real literals are distinct in canonical form
            if (a->literal.is_int() != b->literal.is_int()) return false;
            return a->literal == b->literal;
        case Expr::Kind::param_ref:
        case Expr::Kind::var_ref:
        case Expr::Kind::widget_ref:
            return a->name == b->name;
        case Expr::Kind::unary:
            return a->unary_op == b->unary_op && expr_equal(a->lhs, b->lhs);
        case Expr::Kind::binary:
            return a->binary_op == b->binary_op && expr_equal(a->lhs, b->lhs) &&
                   expr_equal(a->rhs, b->rhs);
    }
    return false;
}

namespace {

bool steps_equal(const std::vector<Step>& a, const std::vector<Step>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!step_equal(a[i], b[i])) return false;
    return true;
}

}  // namespace

bool step_equal(const Step& a, const Step& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Step::Kind::click:
            return a.widget == b.widget;
        case Step::Kind::set_value:
        case Step::Kind::select:
            return a.widget == b.widget && expr_equal(a.value, b.value);
        case Step::Kind::read:
            return a.widget == b.widget && a.variable == b.variable;
        case Step::Kind::wait_until:
            return expr_equal(a.condition, b.condition) && a.timeout_ms == b.timeout_ms &&
                   a.poll_ms == b.poll_ms;
        case Step::Kind::assert_cond:
            return expr_equal(a.condition, b.condition);
        case Step::Kind::branch:
            return expr_equal(a.condition, b.condition) &&
                   steps_equal(a.then_steps, b.then_steps) &&
                   steps_equal(a.else_steps, b.else_steps);
        case Step::Kind::repeat_until:
            return expr_equal(a.condition, b.condition) && steps_equal(a.body, b.body) &&
                   a.max_iter == b.max_iter;
        case Step::Kind::export_data:
            return a.dataset == b.dataset && expr_equal(a.value, b.value);
        case Step::Kind::call: {
            if (a.callee != b.callee || a.call_args.size() != b.call_args.size()) return false;
            for (std::size_t i = 0; i < a.call_args.size(); ++i) {
                if (a.call_args[i].first != b.call_args[i].first ||
                    !expr_equal(a.call_args[i].second, b.call_args[i].second))
                    return false;
            }
            return true;
        }
    }
    return false;
}

bool program_equal(const Type1Program& a, const Type1Program& b) {
    return steps_equal(a.steps, b.steps);
}

const char* step_kind_name(Step::Kind k) {
    switch (k) {
        case Step::Kind::click: return "click";
        case Step::Kind::set_value: return "set";
        case Step::Kind::select: return "select";
        case Step::Kind::read: return "read";
        case Step::Kind::wait_until: return "wait_until";
        case Step::Kind::assert_cond: return "assert";
        case Step::Kind::branch: return "if";
        case Step::Kind::repeat_until: return "repeat";
        case Step::Kind::export_data: return "export";
        case Step::Kind::call: return "call";
    }
    return "?";
}

}  // namespace aurakit::model
