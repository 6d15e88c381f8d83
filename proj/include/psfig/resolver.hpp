#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "psfig/syntax.hpp"

namespace psfig {

/// Absolute position in picture units, +y up.
struct AbsPoint {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const AbsPoint &) const = default;
};

/// Raised for semantic errors found while resolving geometry, e.g. a
/// reference to a node that has not been defined yet.
class ResolveError : public std::runtime_error {
public:
    ResolveError(SourcePos pos, std::string message, std::string node = {});

    SourcePos pos() const { return pos_; }
    const std::string &message() const { return message_; }
    /// The offending node name, empty when the error is not about a node.
    const std::string &node() const { return node_; }

private:
    SourcePos pos_;
    std::string message_;
    std::string node_;
};

/// Per-picture node bindings.
class NodeEnv {
public:
    /// Binds or rebinds; a rebinding is recorded as a warning and the last
    /// binding wins.
    void bind(const std::string &name, AbsPoint point, SourcePos pos);
    const AbsPoint *find(const std::string &name) const;
    const AbsPoint &at(const std::string &name, SourcePos pos) const;

    const std::map<std::string, AbsPoint> &bindings() const { return bindings_; }
    const std::vector<Diagnostic> &warnings() const { return warnings_; }
    std::size_t size() const { return bindings_.size(); }

private:
    std::map<std::string, AbsPoint> bindings_;
    std::vector<Diagnostic> warnings_;
};

enum class ElementKind { polyline, closed_curve };

struct ResolvedElement {
    ElementKind kind = ElementKind::polyline;
    std::vector<AbsPoint> points;
    double linewidth_cm = 0.0;
    SourcePos pos;
};

struct ResolvedPicture {
    AbsPoint bbox_lo;
    AbsPoint bbox_hi;
    std::vector<ResolvedElement> elements;
    double unit_cm = 1.0;
    NodeEnv nodes;
};

/// 0.8pt, the stroke width used when no linewidth is set.
double default_linewidth_cm();

double convert_dimension(const Dimension &d);

/// Degrees for angles; lengths stay in units. `pos` is only used for error
/// reporting.
AbsPoint resolve_point(const PointExpr &expr, const NodeEnv &env, SourcePos pos = {});

struct ResolveSettings {
    double unit_cm = 1.0;
    double linewidth_cm = default_linewidth_cm();
};

ResolvedPicture resolve_picture(const Picture &picture, double unit_cm);
ResolvedPicture resolve_picture(const Picture &picture, const ResolveSettings &settings);

/// Resolves every picture using the document-level unit and linewidth.
std::vector<ResolvedPicture> resolve_document(const DocumentTree &doc);

} // namespace psfig
