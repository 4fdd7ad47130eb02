#include "lexer.hpp"

#include <cctype>
#include <cstdio>

#include "covbal/errors.hpp"

namespace covbal {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

namespace detail {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string describe(const Token& token) {
    switch (token.kind) {
        case TokenKind::End:
            return "end of input";
        case TokenKind::Identifier:
            return "identifier '" + token.text + "'";
        case TokenKind::Number:
            return "number '" + token.text + "'";
        case TokenKind::Symbol:
            return "'" + token.text + "'";
    }
    return "token";
}

Lexer::Lexer(std::string_view text, std::span<const std::string_view> symbols)
    : text_(text), symbols_(symbols) {}

void Lexer::advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
    }
}

void Lexer::skip_trivia() {
    while (pos_ < text_.size()) {
        char c = text_[pos_];
        if (std::isspace(static_cast<unsigned char>(c)) != 0) {
            advance(1);
        } else if (text_.substr(pos_, 2) == "--") {
            while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
        } else {
            break;
        }
    }
}

Token Lexer::scan() {
    skip_trivia();
    Token tok;
    tok.offset = pos_;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_.size()) {
        tok.kind = TokenKind::End;
        return tok;
    }
    char c = text_[pos_];
    std::size_t len = 0;
    if (is_ident_start(c)) {
        tok.kind = TokenKind::Identifier;
        while (pos_ + len < text_.size() && is_ident_char(text_[pos_ + len])) ++len;
    } else if (is_digit(c)) {
        tok.kind = TokenKind::Number;
        while (pos_ + len < text_.size() && is_digit(text_[pos_ + len])) ++len;
    } else {
        tok.kind = TokenKind::Symbol;
        for (std::string_view sym : symbols_) {
            if (sym.size() > len && text_.substr(pos_, sym.size()) == sym) len = sym.size();
        }
        if (len == 0) {
            auto byte = static_cast<unsigned char>(c);
            std::string shown;
            if (byte < 0x20 || byte >= 0x7f) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "0x%02x", byte);
                shown = std::string("byte ") + buf;
            } else {
                shown = std::string("'") + c + "'";
            }
            throw ParseError("unknown operator or character " + shown, line_, column_);
        }
    }
    tok.text = std::string(text_.substr(pos_, len));
    advance(len);
    return tok;
}

const Token& Lexer::peek() {
    if (!lookahead_) {
        saved_pos_ = pos_;
        saved_line_ = line_;
        saved_column_ = column_;
        lookahead_ = scan();
    }
    return *lookahead_;
}

Token Lexer::next() {
    Token tok = peek();
    lookahead_.reset();
    return tok;
}

bool Lexer::peek_symbol(std::string_view symbol) {
    const Token& tok = peek();
    return tok.kind == TokenKind::Symbol && tok.text == symbol;
}

bool Lexer::peek_identifier(std::string_view word) {
    const Token& tok = peek();
    return tok.kind == TokenKind::Identifier && tok.text == word;
}

bool Lexer::accept_symbol(std::string_view symbol) {
    if (!peek_symbol(symbol)) return false;
    next();
    return true;
}

bool Lexer::accept_identifier(std::string_view word) {
    if (!peek_identifier(word)) return false;
    next();
    return true;
}

Token Lexer::expect_symbol(std::string_view symbol) {
    if (!peek_symbol(symbol)) fail_expected(peek(), "'" + std::string(symbol) + "'");
    return next();
}

Token Lexer::expect_identifier(std::string_view word) {
    if (!peek_identifier(word)) fail_expected(peek(), "'" + std::string(word) + "'");
    return next();
}

Token Lexer::expect_identifier() {
    if (peek().kind != TokenKind::Identifier) fail_expected(peek(), "identifier");
    return next();
}

Token Lexer::expect_number() {
    if (peek().kind != TokenKind::Number) fail_expected(peek(), "number");
    return next();
}

Token Lexer::read_word(std::string_view stops) {
    if (lookahead_) {
        pos_ = saved_pos_;
        line_ = saved_line_;
        column_ = saved_column_;
        lookahead_.reset();
    }
    skip_trivia();
    Token tok;
    tok.kind = TokenKind::Identifier;
    tok.offset = pos_;
    tok.line = line_;
    tok.column = column_;
    std::size_t len = 0;
    while (pos_ + len < text_.size()) {
        char c = text_[pos_ + len];
        if (std::isspace(static_cast<unsigned char>(c)) != 0 || stops.find(c) != std::string_view::npos) break;
        ++len;
    }
    if (len == 0) {
        tok.kind = pos_ >= text_.size() ? TokenKind::End : TokenKind::Symbol;
        tok.text = pos_ >= text_.size() ? "" : std::string(1, text_[pos_]);
        fail_expected(tok, "path");
    }
    tok.text = std::string(text_.substr(pos_, len));
    advance(len);
    return tok;
}

void Lexer::fail(const Token& at, const std::string& message) const {
    throw ParseError(message, at.line, at.column);
}

void Lexer::fail_expected(const Token& at, std::string_view expected) const {
    fail(at, "expected " + std::string(expected) + ", found " + describe(at));
}

}  // namespace detail
}  // namespace covbal
