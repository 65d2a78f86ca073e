#pragma once

#include <string>
#include <vector>

#include "aurakit/dsl/diagnostic.hpp"
#include "aurakit/model/value.hpp"

namespace aurakit::dsl {

enum class TokenKind {
    identifier,
    param_ref,  // $name
    int_lit,
    real_lit,
    string_lit,
    lparen,
    rparen,
    lbrace,
    rbrace,
    comma,
    assign,  // =
    plus,
    minus,
    star,
    slash,
    eq,  // ==
    ne,
    lt,
    le,
    gt,
    ge,
    newline,
    end_of_file,
};

struct Token {
    TokenKind kind = TokenKind::end_of_file;
    std::string text;       // identifier/param name, raw lexeme
    std::int64_t int_value = 0;
    double real_value = 0;
    std::string string_value;  // decoded string literal
    model::SourceSpan span;
};

struct LexResult {
    std::vector<Token> tokens;  // ends with end_of_file on success
    std::vector<Diagnostic> diagnostics;
};

// Identifiers may contain '-' when directly followed by [a-z0-9_]; binary
// minus therefore requires surrounding whitespace (the formatter always
// emits it that way).
LexResult lex(const std::string& source);

}  // namespace aurakit::dsl
