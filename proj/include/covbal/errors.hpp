#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace covbal {

/// Raised by every text parser in the library. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    /// The message without the location prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

/// Input parsed fine but breaks a semantic rule (duplicate names, undeclared references, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace covbal
