#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "psfig/syntax.hpp"

namespace psfig {

class ParseError : public std::runtime_error {
public:
    ParseError(SourcePos pos, std::string message, std::string snippet);

    int line() const { return pos_.line; }
    int column() const { return pos_.column; }
    SourcePos pos() const { return pos_; }
    const std::string &message() const { return message_; }
    /// The offending text: the rest of the source line from the error column.
    const std::string &snippet() const { return snippet_; }

private:
    SourcePos pos_;
    std::string message_;
    std::string snippet_;
};

/// Thrown by parse_dimension; carries no position since the text may not
/// come from a document.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ParseOptions {
    /// In lenient mode unknown commands and environments are skipped with a
    /// warning instead of failing the parse.
    bool strict = true;
};

DocumentTree parse_document(std::string_view input, const ParseOptions &options = {});

/// Parses a single parenthesised point expression such as `(5.5;210)`.
/// Surrounding whitespace is allowed, anything else is an error.
PointExpr parse_point(std::string_view text);

/// Parses `<number><unit>` where unit is one of cm, mm, pt, in.
Dimension parse_dimension(std::string_view raw);

} // namespace psfig
