#pragma once

#include <memory>
#include <vector>

#include "aurakit/model/value.hpp"

namespace aurakit::model {

struct SourceSpan {
    int line = 1;    // 1-based
    int column = 1;  // 1-based
    int length = 1;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BinaryOp { add, sub, mul, div, eq, ne, lt, le, gt, ge, and_, or_ };
enum class UnaryOp { neg, not_ };

struct Expr {
    enum class Kind { literal, param_ref, var_ref, widget_ref, unary, binary };

    Kind kind = Kind::literal;
    SourceSpan span;

    Value literal;     // Kind::literal
    std::string name;  // param/var/widget name

    UnaryOp unary_op = UnaryOp::neg;
    BinaryOp binary_op = BinaryOp::add;
    ExprPtr lhs, rhs;  // rhs empty for unary

    static ExprPtr make_literal(Value v, SourceSpan sp = {});
    static ExprPtr make_param(std::string name, SourceSpan sp = {});
    static ExprPtr make_var(std::string name, SourceSpan sp = {});
    static ExprPtr make_widget(std::string name, SourceSpan sp = {});
    static ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourceSpan sp = {});
    static ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceSpan sp = {});
};

// Structural equality, spans excluded.
bool expr_equal(const ExprPtr& a, const ExprPtr& b);

struct Step {
    enum class Kind {
        click,
        set_value,
        select,
        read,
        wait_until,
        assert_cond,
        branch,
        repeat_until,
        export_data,
        call
    };

    Kind kind = Kind::click;
    SourceSpan span;

    std::string widget;    // click / set_value / select / read target
    std::string variable;  // read destination
    ExprPtr value;         // set_value / select value; export path
    ExprPtr condition;     // wait_until / assert / branch / repeat_until

    std::int64_t timeout_ms = 0;  // wait_until
    std::int64_t poll_ms = 0;

    std::vector<Step> then_steps;  // branch
    std::vector<Step> else_steps;

    std::vector<Step> body;        // repeat_until
    std::int64_t max_iter = 1;

    std::string dataset;  // export_data

    std::string callee;  // call
    std::vector<std::pair<std::string, ExprPtr>> call_args;
};

struct Type1Program {
    std::vector<Step> steps;
};

bool step_equal(const Step& a, const Step& b);
bool program_equal(const Type1Program& a, const Type1Program& b);

const char* step_kind_name(Step::Kind k);

}  // namespace aurakit::model
