#include "psfig/parser.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>

namespace psfig {

ParseError::ParseError(SourcePos pos, std::string message, std::string snippet)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      pos_(pos), message_(std::move(message)), snippet_(std::move(snippet)) {}

namespace {

constexpr std::size_t kSnippetMax = 40;

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

/// Splits a numeral off the front of `text`: optional sign, digits, optional
/// fraction. Returns the number of bytes consumed, 0 when there is no numeral.
std::size_t scan_numeral(std::string_view text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-'))
        ++i;
    std::size_t digits = 0;
    while (i < text.size() && is_digit(text[i])) {
        ++i;
        ++digits;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && is_digit(text[i])) {
            ++i;
            ++digits;
        }
    }
    return digits == 0 ? 0 : i;
}

enum class NumeralStatus { ok, out_of_range };

NumeralStatus convert_numeral(std::string_view numeral, double &out) {
    if (!numeral.empty() && numeral.front() == '+')
        numeral.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(numeral.data(), numeral.data() + numeral.size(), out);
    if (ec == std::errc::result_out_of_range || !std::isfinite(out))
        return NumeralStatus::out_of_range;
    return NumeralStatus::ok;
}

class Parser {
public:
    Parser(std::string_view src, const ParseOptions &options) : src_(src), options_(options) {
        line_starts_.push_back(0);
        for (std::size_t i = 0; i < src_.size(); ++i) {
            if (src_[i] == '\n')
                line_starts_.push_back(i + 1);
        }
    }

    DocumentTree document() {
        if (!skip_preamble())
            fail(0, "missing \\begin{document}");
        body_at_ = at_;
        body();
        return std::move(doc_);
    }

    PointExpr lone_point() {
        skip_ws();
        if (peek() != '(')
            fail(at_, "expected '('");
        PointExpr p = point();
        skip_ws();
        if (!at_end())
            fail(at_, "unexpected text after point");
        return p;
    }

private:
    // --- low-level scanning -------------------------------------------------

    bool at_end() const { return at_ >= src_.size(); }
    char peek() const { return at_end() ? '\0' : src_[at_]; }
    std::string_view rest() const { return src_.substr(std::min(at_, src_.size())); }

    void skip_ws() {
        while (!at_end()) {
            char c = src_[at_];
            if (is_space(c)) {
                ++at_;
            } else if (c == '%') {
                while (!at_end() && src_[at_] != '\n')
                    ++at_;
            } else {
                break;
            }
        }
    }

    SourcePos pos_of(std::size_t offset) const {
        offset = std::min(offset, src_.size());
        auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
        std::size_t line_index = static_cast<std::size_t>(it - line_starts_.begin()) - 1;
        int column = 1;
        for (std::size_t i = line_starts_[line_index]; i < offset; ++i) {
            // count code points, not bytes
            if ((static_cast<unsigned char>(src_[i]) & 0xC0) != 0x80)
                ++column;
        }
        return SourcePos{static_cast<int>(line_index) + 1, column};
    }

    std::string snippet_at(std::size_t offset) const {
        offset = std::min(offset, src_.size());
        std::size_t end = offset;
        while (end < src_.size() && src_[end] != '\n' && src_[end] != '\r')
            ++end;
        if (end - offset > kSnippetMax) {
            end = offset + kSnippetMax;
            while (end > offset && (static_cast<unsigned char>(src_[end]) & 0xC0) == 0x80)
                --end;
        }
        return std::string(src_.substr(offset, end - offset));
    }

    [[noreturn]] void fail(std::size_t offset, std::string message) const {
        throw ParseError(pos_of(offset), std::move(message), snippet_at(offset));
    }

    void warn(std::size_t offset, std::string message) {
        doc_.warnings.push_back(Diagnostic{pos_of(offset), std::move(message)});
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c)
            fail(at_, std::string("expected '") + c + "'");
        ++at_;
    }

    /// Reads `\name` (letters only) at the cursor; a control symbol such as
    /// `\\` yields a one-character name.
    std::string_view control_word() {
        std::size_t start = ++at_;
        while (!at_end() && is_alpha(src_[at_]))
            ++at_;
        if (at_ == start && !at_end())
            ++at_;
        return src_.substr(start, at_ - start);
    }

    std::string_view identifier(const char *what) {
        skip_ws();
        std::size_t start = at_;
        if (!is_alpha(peek()))
            fail(at_, std::string("expected ") + what);
        while (!at_end() && (is_alpha(src_[at_]) || is_digit(src_[at_])))
            ++at_;
        return src_.substr(start, at_ - start);
    }

    std::string_view braced_name() {
        expect('{');
        std::string_view name = identifier("a name");
        expect('}');
        return name;
    }

    double numeral(const char *what) {
        skip_ws();
        std::size_t len = scan_numeral(rest());
        if (len == 0)
            fail(at_, std::string("expected number for ") + what);
        double value = 0.0;
        if (convert_numeral(src_.substr(at_, len), value) != NumeralStatus::ok)
            fail(at_, "number out of range");
        at_ += len;
        return value;
    }

    /// Skips a balanced group opened at the cursor by `open`.
    void skip_group(char open, char close) {
        std::size_t start = at_;
        int depth = 0;
        while (!at_end()) {
            char c = src_[at_++];
            if (c == open) {
                ++depth;
            } else if (c == close) {
                if (--depth == 0)
                    return;
            }
        }
        fail(start, std::string("unclosed '") + open + "'");
    }

    // --- document structure -------------------------------------------------

    /// Returns false when `\begin{document}` never appears.
    bool skip_preamble() {
        bool warned = false;
        while (true) {
            skip_ws();
            if (at_end())
                return false;
            std::size_t start = at_;
            if (peek() != '\\') {
                ++at_;
                continue;
            }
            std::string_view word = control_word();
            if (word == "begin") {
                skip_ws();
                if (peek() == '{') {
                    std::size_t mark = at_;
                    ++at_;
                    skip_ws();
                    if (rest().substr(0, 8) == "document") {
                        at_ += 8;
                        skip_ws();
                        if (peek() == '}') {
                            ++at_;
                            return true;
                        }
                    }
                    at_ = mark;
                }
            }
            if (!warned) {
                warn(start, "skipping preamble before \\begin{document}");
                warned = true;
            }
        }
    }

    void body() {
        while (true) {
            skip_ws();
            if (at_end())
                fail(body_at_, "missing \\end{document}");
            std::size_t start = at_;
            if (peek() != '\\') {
                stray_text(start);
                continue;
            }
            std::string_view word = control_word();
            if (word == "end") {
                std::string_view env = braced_name();
                if (env == "document")
                    return;
                if (env == "pspicture")
                    fail(start, "\\end{pspicture} without matching \\begin{pspicture}");
                unknown(start, "environment end \\end{" + std::string(env) + "}");
            } else if (word == "begin") {
                std::string_view env = braced_name();
                if (env == "pspicture") {
                    doc_.pictures.push_back(picture(start));
                } else if (env == "document") {
                    fail(start, "nested \\begin{document}");
                } else {
                    unknown(start, "environment \\begin{" + std::string(env) + "}");
                }
            } else if (word == "newpage") {
                // picture separator
            } else if (word == "psset") {
                document_psset();
            } else if (word == "psline" || word == "psccurve" || word == "pnode") {
                if (options_.strict)
                    fail(start, "\\" + std::string(word) + " outside pspicture");
                warn(start, "skipping \\" + std::string(word) + " outside pspicture");
                skip_arguments();
            } else {
                unknown_command(start, word);
            }
        }
    }

    Picture picture(std::size_t begin_offset) {
        Picture pic;
        pic.pos = pos_of(begin_offset);
        skip_ws();
        if (peek() != '(')
            fail(at_, "pspicture needs a bounding box");
        std::size_t box_at = at_;
        Cartesian first = bbox_corner();
        skip_ws();
        if (peek() == '(') {
            Cartesian second = bbox_corner();
            pic.bbox_lo = {first.x, first.y};
            pic.bbox_hi = {second.x, second.y};
        } else {
            pic.bbox_hi = {first.x, first.y};
        }
        if (!(pic.bbox_lo.x < pic.bbox_hi.x && pic.bbox_lo.y < pic.bbox_hi.y))
            fail(box_at, "pspicture bounding box is empty");

        while (true) {
            skip_ws();
            if (at_end())
                fail(begin_offset, "missing \\end{pspicture}");
            std::size_t start = at_;
            if (peek() != '\\') {
                stray_text(start);
                continue;
            }
            std::string_view word = control_word();
            if (word == "end") {
                std::string_view env = braced_name();
                if (env == "pspicture")
                    return pic;
                if (env == "document")
                    fail(start, "\\end{document} inside pspicture");
                unknown(start, "environment end \\end{" + std::string(env) + "}");
            } else if (word == "begin") {
                std::string_view env = braced_name();
                if (env == "pspicture" || env == "document")
                    fail(start, "\\begin{" + std::string(env) + "} inside pspicture");
                unknown(start, "environment \\begin{" + std::string(env) + "}");
            } else if (word == "newpage") {
                fail(start, "\\newpage inside pspicture");
            } else if (word == "psline") {
                PsLine line;
                line.options = drawing_options();
                line.points = point_list(start, "\\psline", kMinLinePoints);
                pic.commands.push_back({std::move(line), pos_of(start)});
            } else if (word == "psccurve") {
                PsCCurve curve;
                curve.options = drawing_options();
                curve.points = point_list(start, "\\psccurve", kMinCurvePoints);
                pic.commands.push_back({std::move(curve), pos_of(start)});
            } else if (word == "pnode") {
                PNode node;
                skip_ws();
                if (peek() != '(')
                    fail(at_, "\\pnode needs a point");
                node.point = point();
                node.name = std::string(braced_name());
                pic.commands.push_back({std::move(node), pos_of(start)});
            } else if (word == "psset") {
                PsSet set;
                set.options = setting_options();
                pic.commands.push_back({std::move(set), pos_of(start)});
            } else {
                unknown_command(start, word);
            }
        }
    }

    Cartesian bbox_corner() {
        std::size_t start = at_;
        PointExpr p = point();
        if (auto *c = std::get_if<Cartesian>(&p))
            return *c;
        fail(start, "bounding box corners must be (x,y)");
    }

    void stray_text(std::size_t start) {
        if (options_.strict)
            fail(start, "unexpected text");
        warn(start, "skipping text");
        while (!at_end() && src_[at_] != '\\' && !is_space(src_[at_]))
            ++at_;
    }

    void unknown(std::size_t start, const std::string &what) {
        if (options_.strict)
            fail(start, "unknown " + what);
        warn(start, "skipping unknown " + what);
    }

    void unknown_command(std::size_t start, std::string_view word) {
        unknown(start, "command \\" + std::string(word));
        skip_arguments();
    }

    /// Skips any bracket, brace or parenthesis groups that directly follow.
    void skip_arguments() {
        while (true) {
            skip_ws();
            switch (peek()) {
            case '[':
                skip_group('[', ']');
                break;
            case '{':
                skip_group('{', '}');
                break;
            case '(':
                skip_group('(', ')');
                break;
            default:
                return;
            }
        }
    }

    // --- options --------------------------------------------------------------

    /// Parses `key=value,...` up to and including `close`; the opening
    /// delimiter has already been consumed.
    std::vector<std::pair<std::size_t, OptionList::Entry>> raw_options(char close) {
        std::vector<std::pair<std::size_t, OptionList::Entry>> out;
        OptionList seen;
        skip_ws();
        if (peek() == close) {
            ++at_;
            return out;
        }
        while (true) {
            skip_ws();
            std::size_t key_at = at_;
            if (!is_alpha(peek()))
                fail(at_, "malformed option list: expected key");
            std::string key(identifier("option key"));
            skip_ws();
            if (peek() != '=')
                fail(at_, "malformed option list: expected '=' after '" + key + "'");
            ++at_;
            std::size_t value_start = at_;
            while (!at_end() && src_[at_] != ',' && src_[at_] != close && src_[at_] != '[' &&
                   src_[at_] != ']' && src_[at_] != '{' && src_[at_] != '}')
                ++at_;
            if (at_end())
                fail(key_at, std::string("malformed option list: missing '") + close + "'");
            std::string_view value = trim(src_.substr(value_start, at_ - value_start));
            if (value.empty())
                fail(value_start, "malformed option list: empty value for '" + key + "'");
            if (src_[at_] != ',' && src_[at_] != close)
                fail(at_, "malformed option list: unexpected '" + std::string(1, src_[at_]) + "'");
            auto value_at = static_cast<std::size_t>(value.data() - src_.data());
            if (!seen.add(key, std::string(value)))
                fail(key_at, "duplicate option key '" + key + "'");
            out.push_back({value_at, {key, std::string(value)}});
            if (src_[at_++] == close)
                return out;
        }
    }

    Dimension checked_dimension(std::size_t value_at, const std::string &key, const std::string &value) {
        try {
            return parse_dimension(value);
        } catch (const DimensionError &e) {
            fail(value_at, "bad value for '" + key + "': " + e.what());
        }
    }

    OptionList drawing_options() {
        skip_ws();
        if (peek() != '[')
            return {};
        ++at_;
        OptionList options;
        for (auto &[value_at, entry] : raw_options(']')) {
            if (entry.first == "linewidth")
                checked_dimension(value_at, entry.first, entry.second);
            else
                warn(value_at, "ignoring unknown option '" + entry.first + "'");
            options.add(std::move(entry.first), std::move(entry.second));
        }
        return options;
    }

    OptionList setting_options() {
        expect('{');
        OptionList options;
        for (auto &[value_at, entry] : raw_options('}')) {
            if (entry.first == "unit" || entry.first == "linewidth")
                checked_dimension(value_at, entry.first, entry.second);
            else
                warn(value_at, "ignoring unknown option '" + entry.first + "'");
            options.add(std::move(entry.first), std::move(entry.second));
        }
        return options;
    }

    void document_psset() {
        OptionList options = setting_options();
        for (const auto &[key, value] : options.entries()) {
            if (key == "unit")
                doc_.unit = parse_dimension(value);
            else if (key == "linewidth")
                doc_.linewidth = parse_dimension(value);
            doc_.global_settings.set(key, value);
        }
    }

    // --- points -----------------------------------------------------------------

    std::vector<PointExpr> point_list(std::size_t command_at, const char *command, std::size_t minimum) {
        std::vector<PointExpr> points;
        while (true) {
            skip_ws();
            if (peek() != '(')
                break;
            points.push_back(point());
        }
        if (points.size() < minimum) {
            fail(command_at, std::string(command) + " needs at least " + std::to_string(minimum) + " points, got " +
                                 std::to_string(points.size()));
        }
        return points;
    }

    /// Cursor is at `(`. A letter starts a node name, `[` an offset, anything
    /// else must be a numeral pair.
    PointExpr point() {
        std::size_t open = at_++;
        skip_ws();
        if (at_end())
            fail(open, "unclosed '('");
        PointExpr result;
        char c = peek();
        if (is_alpha(c)) {
            result = NodeRef{std::string(identifier("node name"))};
        } else if (c == '[') {
            result = offset_point();
        } else {
            std::size_t first_at = at_;
            double a = numeral("coordinate");
            skip_ws();
            char sep = peek();
            if (at_end())
                fail(open, "unclosed '('");
            if (sep == ')')
                fail(first_at, "bare number is not a node name");
            if (sep != ',' && sep != ';')
                fail(at_, "expected ',' or ';' in point");
            ++at_;
            double b = numeral(sep == ',' ? "y coordinate" : "angle");
            if (sep == ',')
                result = Cartesian{a, b};
            else
                result = Polar{a, b};
        }
        skip_ws();
        if (at_end())
            fail(open, "unclosed '('");
        if (peek() != ')')
            fail(at_, "expected ')'");
        ++at_;
        return result;
    }

    Offset offset_point() {
        std::size_t bracket = at_++;
        std::optional<double> angle, nodesep;
        for (const auto &[value_at, entry] : raw_options(']')) {
            const auto &[key, value] = entry;
            if (key != "angle" && key != "nodesep")
                fail(value_at, "unexpected key '" + key + "' in offset point");
            std::size_t len = scan_numeral(value);
            double number = 0.0;
            if (len == 0 || len != value.size())
                fail(value_at, "expected number for '" + key + "'");
            if (convert_numeral(value, number) != NumeralStatus::ok)
                fail(value_at, "number out of range");
            (key == "angle" ? angle : nodesep) = number;
        }
        if (!angle)
            fail(bracket, "offset point is missing 'angle'");
        if (!nodesep)
            fail(bracket, "offset point is missing 'nodesep'");
        skip_ws();
        std::string base(identifier("node name after ']'"));
        return Offset{*angle, *nodesep, std::move(base)};
    }

    std::string_view src_;
    ParseOptions options_;
    std::vector<std::size_t> line_starts_;
    std::size_t at_ = 0;
    std::size_t body_at_ = 0;
    DocumentTree doc_;
};

} // namespace

DocumentTree parse_document(std::string_view input, const ParseOptions &options) {
    return Parser(input, options).document();
}

PointExpr parse_point(std::string_view text) { return Parser(text, ParseOptions{}).lone_point(); }

Dimension parse_dimension(std::string_view raw) {
    std::string_view text = trim(raw);
    if (text.empty())
        throw DimensionError("empty dimension");
    std::size_t len = scan_numeral(text);
    if (len == 0)
        throw DimensionError("expected number");
    double value = 0.0;
    if (convert_numeral(text.substr(0, len), value) != NumeralStatus::ok)
        throw DimensionError("non-finite value");
    std::string_view tag = trim(text.substr(len));
    if (tag.empty())
        throw DimensionError("missing unit tag");
    for (LengthUnit unit : {LengthUnit::cm, LengthUnit::mm, LengthUnit::pt, LengthUnit::in}) {
        if (tag == unit_tag(unit))
            return Dimension{value, unit};
    }
    throw DimensionError("unknown unit tag '" + std::string(tag) + "'");
}

} // namespace psfig
