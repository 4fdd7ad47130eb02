#pragma once

// Shared tokenizer for the rule, interface, model and hierarchy formats.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace covbal::detail {

enum class TokenKind { Identifier, Number, Symbol, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

std::string describe(const Token& token);

/// Splits text into identifiers, unsigned decimal numbers and punctuation.
/// Whitespace and `--` comments (to end of line) are skipped. Symbols are
/// matched longest-first against the table given at construction.
class Lexer {
public:
    Lexer(std::string_view text, std::span<const std::string_view> symbols);

    const Token& peek();
    Token next();

    bool at_end() { return peek().kind == TokenKind::End; }
    bool peek_symbol(std::string_view symbol);
    bool peek_identifier(std::string_view word);

    /// Consumes the symbol if it is next.
    bool accept_symbol(std::string_view symbol);
    bool accept_identifier(std::string_view word);

    Token expect_symbol(std::string_view symbol);
    Token expect_identifier(std::string_view word);
    /// Any identifier.
    Token expect_identifier();
    Token expect_number();

    /// Reads a raw run of characters up to whitespace or one of `stops`.
    /// Used for file paths, which do not tokenize.
    Token read_word(std::string_view stops);

    [[noreturn]] void fail(const Token& at, const std::string& message) const;
    [[noreturn]] void fail_expected(const Token& at, std::string_view expected) const;

private:
    void skip_trivia();
    Token scan();
    void advance(std::size_t n);

    std::string_view text_;
    std::span<const std::string_view> symbols_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    std::optional<Token> lookahead_;
    // Position before the lookahead was scanned, so read_word can rewind.
    std::size_t saved_pos_ = 0;
    std::size_t saved_line_ = 1;
    std::size_t saved_column_ = 1;
};

}  // namespace covbal::detail
