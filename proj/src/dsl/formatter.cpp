#include "aurakit/dsl/formatter.hpp"

#include <cctype>

#include "aurakit/core/text.hpp"

namespace aurakit::dsl {

namespace {

using model::BinaryOp;
using model::Expr;
using model::ExprPtr;
using model::Step;
using model::UnaryOp;
using model::Value;

constexpr int kMaxWidth = 120;
constexpr int kContinuationExtra = 4;

struct Atom {
    std::string text;
    bool glue = false;        // no space between this and the previous atom
    bool is_string = false;   // string literal; may be split across lines
    std::string raw;          // decoded value for string atoms
};

void push(std::vector<Atom>& out, std::string text, bool glue = false) {
    out.push_back({std::move(text), glue, false, {}});
}

std::string escape_char(char c) {
    switch (c) {
        case '"': return "\\\"";
        case '\\': return "\\\\";
        case '\n': return "\\n";
        case '\t': return "\\t";
        case '\r': return "\\r";
        default:
            if ((unsigned char)c < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", (unsigned)c);
                return buf;
            }
            return std::string(1, c);
    }
}

std::string quote_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) out += escape_char(c);
    out += "\"";
    return out;
}

void push_string(std::vector<Atom>& out, const std::string& value, bool glue = false) {
    Atom a;
    a.text = quote_string(value);
    a.glue = glue;
    a.is_string = true;
    a.raw = value;
    out.push_back(std::move(a));
}

int precedence(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::binary:
            switch (e->binary_op) {
                case BinaryOp::or_: return 1;
                case BinaryOp::and_: return 2;
                case BinaryOp::eq:
                case BinaryOp::ne:
                case BinaryOp::lt:
                case BinaryOp::le:
                case BinaryOp::gt:
                case BinaryOp::ge: return 4;
                case BinaryOp::add:
                case BinaryOp::sub: return 5;
                case BinaryOp::mul:
                case BinaryOp::div: return 6;
            }
            return 7;
        case Expr::Kind::unary:
            return e->unary_op == UnaryOp::not_ ? 3 : 7;
        default:
            return 8;
    }
}

const char* op_text(BinaryOp op) {
    switch (op) {
        case BinaryOp::add: return "+";
        case BinaryOp::sub: return "-";
        case BinaryOp::mul: return "*";
        case BinaryOp::div: return "/";
        case BinaryOp::eq: return "==";
        case BinaryOp::ne: return "!=";
        case BinaryOp::lt: return "<";
        case BinaryOp::le: return "<=";
        case BinaryOp::gt: return ">";
        case BinaryOp::ge: return ">=";
        case BinaryOp::and_: return "and";
        case BinaryOp::or_: return "or";
    }
    return "?";
}

void expr_atoms(const ExprPtr& e, std::vector<Atom>& out, int parent_prec);

void parenthesized(const ExprPtr& e, std::vector<Atom>& out, bool glue_open) {
    push(out, "(", glue_open);
    std::size_t first_inner = out.size();
    expr_atoms(e, out, 0);
    if (first_inner < out.size()) out[first_inner].glue = true;
    push(out, ")", true);
}

void expr_atoms(const ExprPtr& e, std::vector<Atom>& out, int parent_prec) {
    const int prec = precedence(e);
    const bool need_parens = prec < parent_prec;
    if (need_parens) {
        parenthesized(e, out, false);
        return;
    }
    switch (e->kind) {
        case Expr::Kind::literal: {
            const Value& v = e->literal;
            if (v.is_text()) {
                push_string(out, v.as_text());
            } else if (v.is_real()) {
                // keep the token a real literal so it re-parses as one
                std::string t = aurakit::fmt_double(v.as_real());
                if (t.find('.') == std::string::npos && t.find('e') == std::string::npos)
                    t += ".0";
                push(out, std::move(t));
            } else {
                push(out, v.str());
            }
            return;
        }
        case Expr::Kind::param_ref:
            push(out, "$" + e->name);
            return;
        case Expr::Kind::var_ref:
            push(out, e->name);
            return;
        case Expr::Kind::widget_ref:
            push(out, "widget(" + e->name + ")");
            return;
        case Expr::Kind::unary: {
            if (e->unary_op == UnaryOp::not_) {
                push(out, "not");
                expr_atoms(e->lhs, out, 3 + 1);
            } else {
                push(out, "-");
                std::size_t first = out.size();
                expr_atoms(e->lhs, out, 7 + 1);
                if (first < out.size()) out[first].glue = true;
            }
            return;
        }
        case Expr::Kind::binary: {
            expr_atoms(e->lhs, out, prec);
            push(out, op_text(e->binary_op));
            expr_atoms(e->rhs, out, prec + 1);
            return;
        }
    }
}

// Fill within kMaxWidth. Breaks are only legal before a non-glued atom, so
// atoms are grouped into glue-chunks first; a chunk that cannot fit even on
// a fresh continuation line has its string literal split into adjacent
// concatenated pieces.
void emit_line(std::string& out, const std::vector<Atom>& atoms, int indent) {
    std::string ind(indent * 2, ' ');
    std::string cont = ind + std::string(kContinuationExtra, ' ');
    std::string line = ind;
    bool line_has_atom = false;

    auto flush_break = [&]() {
        out += line;
        out += " \\\n";
        line = cont;
        line_has_atom = false;
    };

    std::vector<std::vector<const Atom*>> chunks;
    for (const auto& a : atoms) {
        if (chunks.empty() || !a.glue) chunks.emplace_back();
        chunks.back().push_back(&a);
    }

    for (const auto& chunk : chunks) {
        std::size_t chunk_len = 0;
        bool has_string = false;
        for (const auto* a : chunk) {
            chunk_len += a->text.size();
            has_string |= a->is_string;
        }
        std::size_t sep = line_has_atom ? 1 : 0;
        bool fits = line.size() + sep + chunk_len <= kMaxWidth;
        bool fits_fresh = cont.size() + chunk_len + 2 <= kMaxWidth;
        if (!fits && line_has_atom && (fits_fresh || !has_string)) flush_break();

        fits = line.size() + (line_has_atom ? 1 : 0) + chunk_len <= kMaxWidth;
        if (fits || !has_string) {
            // append whole chunk (a string-free chunk that still overflows a
            // fresh line cannot be broken further)
            if (line_has_atom) line += " ";
            for (const auto* a : chunk) line += a->text;
            line_has_atom = true;
            continue;
        }

        // piecewise: glue leading atoms, split each string atom, glue the rest
        bool pending_glue = !line_has_atom ? true : false;
        if (line_has_atom) {
            line += " ";
        }
        for (const auto* a : chunk) {
            (void)pending_glue;
            if (!a->is_string) {
                if (int(line.size() + a->text.size()) > kMaxWidth && line_has_atom) {
                    // trailing punctuation may nudge past the limit only when
                    // a split piece filled the line; start a fresh line for it
                    flush_break();
                }
                line += a->text;
                line_has_atom = true;
                continue;
            }
            std::vector<std::string> units;
            for (char c : a->raw) units.push_back(escape_char(c));
            std::size_t u = 0;
            bool emitted_any = false;
            while (u < units.size() || !emitted_any) {
                int budget = kMaxWidth - int(line.size()) - 2 /*quotes*/ - 2 /*" \"*/;
                std::string piece;
                while (u < units.size() &&
                       int(piece.size() + units[u].size()) <= std::max(0, budget)) {
                    piece += units[u];
                    ++u;
                }
                if (piece.empty() && u < units.size()) {
                    if (line_has_atom && line != cont) {
                        flush_break();
                        continue;
                    }
                    piece = units[u];  // nothing fits even on a fresh line
                    ++u;
                }
                line += "\"" + piece + "\"";
                line_has_atom = true;
                emitted_any = true;
                if (u < units.size()) flush_break();
            }
        }
    }
    out += line;
    out += "\n";
}

void expr_to_atoms_top(const ExprPtr& e, std::vector<Atom>& out) { expr_atoms(e, out, 0); }

void format_steps(std::string& out, const std::vector<Step>& steps, int indent);

void format_step(std::string& out, const Step& s, int indent) {
    std::vector<Atom> atoms;
    switch (s.kind) {
        case Step::Kind::click:
            push(atoms, "click");
            push(atoms, s.widget);
            break;
        case Step::Kind::set_value:
        case Step::Kind::select:
            push(atoms, s.kind == Step::Kind::set_value ? "set" : "select");
            push(atoms, s.widget);
            push(atoms, "=");
            expr_to_atoms_top(s.value, atoms);
            break;
        case Step::Kind::read:
            push(atoms, "read");
            push(atoms, s.variable);
            push(atoms, "=");
            push(atoms, "widget(" + s.widget + ")");
            break;
        case Step::Kind::wait_until:
            push(atoms, "wait_until");
            expr_to_atoms_top(s.condition, atoms);
            push(atoms, "timeout");
            push(atoms, std::to_string(s.timeout_ms));
            push(atoms, "poll");
            push(atoms, std::to_string(s.poll_ms));
            break;
        case Step::Kind::assert_cond:
            push(atoms, "assert");
            expr_to_atoms_top(s.condition, atoms);
            break;
        case Step::Kind::export_data:
            push(atoms, "export");
            push(atoms, s.dataset);
            push(atoms, "to");
            expr_to_atoms_top(s.value, atoms);
            break;
        case Step::Kind::call: {
            push(atoms, "call");
            push(atoms, s.callee);
            push(atoms, "(", true);
            for (std::size_t i = 0; i < s.call_args.size(); ++i) {
                std::size_t first = atoms.size();
                push(atoms, s.call_args[i].first);
                if (i > 0) atoms[first].glue = false;
                else atoms[first].glue = true;
                push(atoms, "=", true);
                std::size_t vstart = atoms.size();
                expr_atoms(s.call_args[i].second, atoms, 8);
                if (vstart < atoms.size()) atoms[vstart].glue = true;
                if (i + 1 < s.call_args.size()) push(atoms, ",", true);
            }
            push(atoms, ")", true);
            break;
        }
        case Step::Kind::branch: {
            push(atoms, "if");
            expr_to_atoms_top(s.condition, atoms);
            push(atoms, "{");
            emit_line(out, atoms, indent);
            format_steps(out, s.then_steps, indent + 1);
            if (s.else_steps.empty()) {
                emit_line(out, {{"}", false, false, {}}}, indent);
            } else {
                std::vector<Atom> mid;
                push(mid, "}");
                push(mid, "else");
                push(mid, "{");
                emit_line(out, mid, indent);
                format_steps(out, s.else_steps, indent + 1);
                emit_line(out, {{"}", false, false, {}}}, indent);
            }
            return;
        }
        case Step::Kind::repeat_until: {
            std::vector<Atom> head;
            push(head, "repeat");
            push(head, "{");
            emit_line(out, head, indent);
            format_steps(out, s.body, indent + 1);
            std::vector<Atom> tail;
            push(tail, "}");
            push(tail, "until");
            expr_to_atoms_top(s.condition, tail);
            push(tail, "max");
            push(tail, std::to_string(s.max_iter));
            emit_line(out, tail, indent);
            return;
        }
    }
    emit_line(out, atoms, indent);
}

void format_steps(std::string& out, const std::vector<Step>& steps, int indent) {
    for (const auto& s : steps) format_step(out, s, indent);
}

}  // namespace

std::string format_program(const model::Type1Program& program) {
    std::string out;
    format_steps(out, program.steps, 0);
    return out;
}

std::string format_expr(const model::ExprPtr& expr) {
    std::vector<Atom> atoms;
    expr_to_atoms_top(expr, atoms);
    std::string out;
    bool has = false;
    for (const auto& a : atoms) {
        if (has && !a.glue) out += " ";
        out += a.text;
        has = true;
    }
    return out;
}

}  // namespace aurakit::dsl
