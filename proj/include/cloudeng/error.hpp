#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cloudeng {

// Base of every error thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownPrefixError : public Error {
public:
    explicit UnknownPrefixError(std::string label)
        : Error("unknown prefix '" + label + ":'"), label_(std::move(label)) {}

    const std::string& label() const noexcept { return label_; }

private:
    std::string label_;
};

enum class ParseErrorKind {
    UnexpectedToken,
    UnknownPrefix,
    UnterminatedString,
    UnterminatedIri,
    BadEscape,
    BadLocalName,
};

inline std::string_view to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::UnexpectedToken:    return "UnexpectedToken";
        case ParseErrorKind::UnknownPrefix:      return "UnknownPrefix";
        case ParseErrorKind::UnterminatedString: return "UnterminatedString";
        case ParseErrorKind::UnterminatedIri:    return "UnterminatedIri";
        case ParseErrorKind::BadEscape:          return "BadEscape";
        case ParseErrorKind::BadLocalName:       return "BadLocalName";
    }
    return "Unknown";
}

// Shared by the Turtle and query parsers. line/column are 1-based and point
// at the first offending byte.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, ParseErrorKind kind, std::string detail)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                std::string(to_string(kind)) + ": " + detail),
          line_(line), column_(column), kind_(kind), detail_(std::move(detail)) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    ParseErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    ParseErrorKind kind_;
    std::string detail_;
};

}  // namespace cloudeng
