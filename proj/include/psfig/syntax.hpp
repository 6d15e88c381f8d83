#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace psfig {

/// 1-based position in the original input.
struct SourcePos {
    int line = 1;
    int column = 1;

    bool operator==(const SourcePos &) const = default;
};

struct Diagnostic {
    SourcePos pos;
    std::string message;
};

enum class LengthUnit { cm, mm, pt, in };

std::string_view unit_tag(LengthUnit unit);

/// A TeX length such as `0.5cm` or `2pt`.
struct Dimension {
    double value = 0.0;
    LengthUnit unit = LengthUnit::cm;

    bool operator==(const Dimension &) const = default;
};

// Coordinate expressions, all lengths in picture units and angles in degrees.

struct Cartesian {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Cartesian &) const = default;
};

struct Polar {
    double r = 0.0;
    double theta = 0.0;

    bool operator==(const Polar &) const = default;
};

struct NodeRef {
    std::string name;

    bool operator==(const NodeRef &) const = default;
};

/// `([angle=a,nodesep=d]Base)`: the point at distance d from Base along direction a.
struct Offset {
    double angle = 0.0;
    double nodesep = 0.0;
    std::string base;

    bool operator==(const Offset &) const = default;
};

using PointExpr = std::variant<Cartesian, Polar, NodeRef, Offset>;

/// Ordered `key=value` pairs. Values are kept as raw text; interpretation is
/// left to whoever consumes the option.
class OptionList {
public:
    using Entry = std::pair<std::string, std::string>;

    OptionList() = default;
    explicit OptionList(std::vector<Entry> entries);

    /// Returns false (and leaves the list unchanged) when the key already exists.
    bool add(std::string key, std::string value);
    /// Inserts or overwrites in place.
    void set(std::string key, std::string value);
    const std::string *find(std::string_view key) const;

    const std::vector<Entry> &entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    bool operator==(const OptionList &) const = default;

private:
    std::vector<Entry> entries_;
};

struct PsLine {
    OptionList options;
    std::vector<PointExpr> points;

    bool operator==(const PsLine &) const = default;
};

struct PsCCurve {
    OptionList options;
    std::vector<PointExpr> points;

    bool operator==(const PsCCurve &) const = default;
};

struct PNode {
    PointExpr point;
    std::string name;

    bool operator==(const PNode &) const = default;
};

struct PsSet {
    OptionList options;

    bool operator==(const PsSet &) const = default;
};

using Command = std::variant<PsLine, PsCCurve, PNode, PsSet>;

inline constexpr std::size_t kMinLinePoints = 2;
inline constexpr std::size_t kMinCurvePoints = 3;

/// A command together with where it started in the source.
struct Statement {
    Command command;
    SourcePos pos;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Vec2 &) const = default;
};

struct Picture {
    Vec2 bbox_lo;
    Vec2 bbox_hi;
    std::vector<Statement> commands;
    SourcePos pos;
};

struct DocumentTree {
    Dimension unit{1.0, LengthUnit::cm};
    /// Document-level `linewidth` from `\psset`, if any.
    std::optional<Dimension> linewidth;
    /// Every document-level `\psset` entry, in order; later entries win.
    OptionList global_settings;
    std::vector<Picture> pictures;
    std::vector<Diagnostic> warnings;
};

/// `[A-Za-z][A-Za-z0-9]*`
bool is_identifier(std::string_view text);

/// Shortest decimal text that reads back as the same double; never uses an exponent.
std::string format_number(double value);

std::string to_source(const PointExpr &point);
std::string to_source(const OptionList &options);
std::string to_source(const Command &command);

std::string_view command_name(const Command &command);

} // namespace psfig
