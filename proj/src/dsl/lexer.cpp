#include "aurakit/dsl/lexer.hpp"

#include <cctype>
#include <charconv>

namespace aurakit::dsl {

std::string render_diagnostic(const Diagnostic& d, const std::string& file) {
    std::string sev = d.severity == Severity::error ? "error" : "warning";
    return file + ":" + std::to_string(d.span.line) + ":" + std::to_string(d.span.column) +
           ": " + sev + "[" + d.code + "]: " + d.message;
}

bool has_error(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::error) return true;
    return false;
}

namespace {

bool ident_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool ident_char(char c) { return std::isalnum((unsigned char)c) || c == '_'; }

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    LexResult run() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t') {
                advance();
            } else if (c == '\r') {
                advance();  // swallowed; the following \n emits the token
            } else if (c == '\n') {
                emit(TokenKind::newline, 1);
                advance_line();
            } else if (c == '\\' && peek(1) == '\n') {
                advance();
                advance_line();
            } else if (c == '\\' && peek(1) == '\r' && peek(2) == '\n') {
                advance();
                advance();
                advance_line();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (c == '"') {
                lex_string();
            } else if (std::isdigit((unsigned char)c)) {
                lex_number();
            } else if (c == '$') {
                lex_param();
            } else if (ident_start(c)) {
                lex_ident();
            } else {
                lex_punct();
            }
            if (has_error(result_.diagnostics)) break;
        }
        Token eof;
        eof.kind = TokenKind::end_of_file;
        eof.span = {line_, col_, 1};
        result_.tokens.push_back(eof);
        return std::move(result_);
    }

private:
    char peek(std::size_t off = 0) const {
        return pos_ + off < src_.size() ? src_[pos_ + off] : '\0';
    }
    void advance() {
        ++pos_;
        ++col_;
    }
    void advance_line() {
        ++pos_;
        ++line_;
        col_ = 1;
    }

    void emit(TokenKind kind, int length) {
        Token t;
        t.kind = kind;
        t.span = {line_, col_, length};
        result_.tokens.push_back(std::move(t));
    }

    void error(const std::string& code, const std::string& msg, int line, int col, int len) {
        result_.diagnostics.push_back({Severity::error, {line, col, len}, code, msg});
    }

    void lex_ident() {
        int line = line_, col = col_;
        std::string text;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (ident_char(c)) {
                text.push_back(c);
                advance();
            } else if (c == '-' && (ident_char(peek(1)))) {
                text.push_back(c);
                advance();
            } else {
                break;
            }
        }
        Token t;
        t.kind = TokenKind::identifier;
        t.text = std::move(text);
        t.span = {line, col, int(t.text.size())};
        result_.tokens.push_back(std::move(t));
    }

    void lex_param() {
        int line = line_, col = col_;
        advance();  // $
        if (pos_ >= src_.size() || !ident_start(src_[pos_])) {
            error("syntax", "expected parameter name after '$'", line, col, 1);
            return;
        }
        std::string text;
        while (pos_ < src_.size() && (ident_char(src_[pos_]) ||
                                      (src_[pos_] == '-' && ident_char(peek(1))))) {
            text.push_back(src_[pos_]);
            advance();
        }
        Token t;
        t.kind = TokenKind::param_ref;
        t.text = std::move(text);
        t.span = {line, col, int(t.text.size()) + 1};
        result_.tokens.push_back(std::move(t));
    }

    void lex_number() {
        int line = line_, col = col_;
        std::string text;
        bool is_real = false;
        while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) {
            text.push_back(src_[pos_]);
            advance();
        }
        if (peek() == '.' && std::isdigit((unsigned char)peek(1))) {
            is_real = true;
            text.push_back('.');
            advance();
            while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) {
                text.push_back(src_[pos_]);
                advance();
            }
        }
        if (peek() == 'e' || peek() == 'E') {
            std::size_t save_pos = pos_;
            int save_col = col_;
            std::string exp;
            exp.push_back(src_[pos_]);
            advance();
            if (peek() == '+' || peek() == '-') {
                exp.push_back(src_[pos_]);
                advance();
            }
            if (std::isdigit((unsigned char)peek())) {
                while (pos_ < src_.size() && std::isdigit((unsigned char)src_[pos_])) {
                    exp.push_back(src_[pos_]);
                    advance();
                }
                text += exp;
                is_real = true;
            } else {
                pos_ = save_pos;  // not an exponent; re-lex as identifier
                col_ = save_col;
            }
        }
        Token t;
        t.span = {line, col, int(text.size())};
        if (is_real) {
            t.kind = TokenKind::real_lit;
            t.real_value = std::strtod(text.c_str(), nullptr);
        } else {
            t.kind = TokenKind::int_lit;
            auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), t.int_value);
            (void)p;
            if (ec != std::errc()) {
                error("syntax", "integer literal out of range", line, col, int(text.size()));
                return;
            }
        }
        t.text = std::move(text);
        result_.tokens.push_back(std::move(t));
    }

    void lex_string() {
        int line = line_, col = col_;
        advance();  // opening quote
        std::string value;
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n') {
                error("unterminated-string", "unterminated string literal", line, col, 1);
                return;
            }
            char c = src_[pos_];
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\') {
                advance();
                char e = peek();
                switch (e) {
                    case '"': value.push_back('"'); advance(); break;
                    case '\\': value.push_back('\\'); advance(); break;
                    case 'n': value.push_back('\n'); advance(); break;
                    case 't': value.push_back('\t'); advance(); break;
                    case 'r': value.push_back('\r'); advance(); break;
                    case 'u': {
                        advance();
                        unsigned code = 0;
                        for (int i = 0; i < 4; ++i) {
                            char h = peek();
                            if (!std::isxdigit((unsigned char)h)) {
                                error("syntax", "invalid \\u escape", line_, col_, 1);
                                return;
                            }
                            code = code * 16 +
                                   (std::isdigit((unsigned char)h) ? h - '0'
                                                                   : std::tolower(h) - 'a' + 10);
                            advance();
                        }
                        if (code < 0x80) {
                            value.push_back(char(code));
                        } else if (code < 0x800) {
                            value.push_back(char(0xc0 | (code >> 6)));
                            value.push_back(char(0x80 | (code & 0x3f)));
                        } else {
                            value.push_back(char(0xe0 | (code >> 12)));
                            value.push_back(char(0x80 | ((code >> 6) & 0x3f)));
                            value.push_back(char(0x80 | (code & 0x3f)));
                        }
                        break;
                    }
                    default:
                        error("syntax", "unknown escape sequence", line_, col_ - 1, 2);
                        return;
                }
            } else {
                value.push_back(c);
                advance();
            }
        }
        Token t;
        t.kind = TokenKind::string_lit;
        t.string_value = std::move(value);
        t.span = {line, col, std::max(1, col_ - col)};
        result_.tokens.push_back(std::move(t));
    }

    void lex_punct() {
        int line = line_, col = col_;
        char c = src_[pos_];
        auto two = [&](char second) { return peek(1) == second; };
        switch (c) {
            case '(': emit(TokenKind::lparen, 1); advance(); return;
            case ')': emit(TokenKind::rparen, 1); advance(); return;
            case '{': emit(TokenKind::lbrace, 1); advance(); return;
            case '}': emit(TokenKind::rbrace, 1); advance(); return;
            case ',': emit(TokenKind::comma, 1); advance(); return;
            case '+': emit(TokenKind::plus, 1); advance(); return;
            case '-': emit(TokenKind::minus, 1); advance(); return;
            case '*': emit(TokenKind::star, 1); advance(); return;
            case '/': emit(TokenKind::slash, 1); advance(); return;
            case '=':
                if (two('=')) {
                    emit(TokenKind::eq, 2);
                    advance();
                    advance();
                } else {
                    emit(TokenKind::assign, 1);
                    advance();
                }
                return;
            case '!':
                if (two('=')) {
                    emit(TokenKind::ne, 2);
                    advance();
                    advance();
                    return;
                }
                break;
            case '<':
                if (two('=')) {
                    emit(TokenKind::le, 2);
                    advance();
                    advance();
                } else {
                    emit(TokenKind::lt, 1);
                    advance();
                }
                return;
            case '>':
                if (two('=')) {
                    emit(TokenKind::ge, 2);
                    advance();
                    advance();
                } else {
                    emit(TokenKind::gt, 1);
                    advance();
                }
                return;
            default:
                break;
        }
        error("syntax", std::string("unexpected character '") + c + "'", line, col, 1);
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    LexResult result_;
};

}  // namespace

LexResult lex(const std::string& source) { return Lexer(source).run(); }

}  // namespace aurakit::dsl
