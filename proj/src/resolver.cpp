#include "psfig/resolver.hpp"

#include <cmath>
#include <numbers>

#include "psfig/parser.hpp"

namespace psfig {

namespace {

constexpr double kCmPerPt = 2.54 / 72.27;

/// Quarter turns are exact so that e.g. (5;90) lands on (0,5).
AbsPoint unit_vector(double degrees) {
    double reduced = std::fmod(degrees, 360.0);
    if (reduced < 0.0)
        reduced += 360.0;
    if (reduced == 0.0)
        return {1.0, 0.0};
    if (reduced == 90.0)
        return {0.0, 1.0};
    if (reduced == 180.0)
        return {-1.0, 0.0};
    if (reduced == 270.0)
        return {0.0, -1.0};
    double rad = reduced * (std::numbers::pi / 180.0);
    return {std::cos(rad), std::sin(rad)};
}

AbsPoint direction(double length, double degrees) {
    AbsPoint u = unit_vector(degrees);
    return {length * u.x, length * u.y};
}

/// Settings that a picture-level `\psset` can change as the walk proceeds.
struct WalkState {
    double picture_unit_cm;
    double unit_cm;
    double linewidth_cm;

    /// Factor from the current unit to the picture's unit.
    double scale() const { return unit_cm / picture_unit_cm; }
};

PointExpr rescaled(const PointExpr &expr, double scale) {
    if (scale == 1.0)
        return expr;
    if (auto *c = std::get_if<Cartesian>(&expr))
        return Cartesian{c->x * scale, c->y * scale};
    if (auto *p = std::get_if<Polar>(&expr))
        return Polar{p->r * scale, p->theta};
    if (auto *o = std::get_if<Offset>(&expr))
        return Offset{o->angle, o->nodesep * scale, o->base};
    return expr;
}

double dimension_option(const std::string &key, const std::string &value, SourcePos pos) {
    try {
        return convert_dimension(parse_dimension(value));
    } catch (const DimensionError &e) {
        throw ResolveError(pos, "bad " + key + " '" + value + "': " + e.what());
    }
}

double linewidth_of(const OptionList &options, const WalkState &state, SourcePos pos) {
    const std::string *raw = options.find("linewidth");
    if (raw == nullptr)
        return state.linewidth_cm;
    double cm = dimension_option("linewidth", *raw, pos);
    if (!(cm > 0.0))
        throw ResolveError(pos, "linewidth must be positive, got '" + *raw + "'");
    return cm;
}

std::vector<AbsPoint> resolve_all(const std::vector<PointExpr> &exprs, const NodeEnv &env, const WalkState &state,
                                  SourcePos pos) {
    std::vector<AbsPoint> out;
    out.reserve(exprs.size());
    for (const auto &e : exprs)
        out.push_back(resolve_point(rescaled(e, state.scale()), env, pos));
    return out;
}

} // namespace

ResolveError::ResolveError(SourcePos pos, std::string message, std::string node)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      pos_(pos), message_(std::move(message)), node_(std::move(node)) {}

void NodeEnv::bind(const std::string &name, AbsPoint point, SourcePos pos) {
    auto [it, inserted] = bindings_.insert_or_assign(name, point);
    if (!inserted)
        warnings_.push_back({pos, "node '" + name + "' redefined"});
}

const AbsPoint *NodeEnv::find(const std::string &name) const {
    auto it = bindings_.find(name);
    return it == bindings_.end() ? nullptr : &it->second;
}

const AbsPoint &NodeEnv::at(const std::string &name, SourcePos pos) const {
    if (const AbsPoint *p = find(name))
        return *p;
    throw ResolveError(pos, "undefined node '" + name + "' (line " + std::to_string(pos.line) + ")", name);
}

double default_linewidth_cm() { return 0.8 * kCmPerPt; }

double convert_dimension(const Dimension &d) {
    switch (d.unit) {
    case LengthUnit::cm:
        return d.value;
    case LengthUnit::mm:
        return d.value * 0.1;
    case LengthUnit::in:
        return d.value * 2.54;
    case LengthUnit::pt:
        return d.value * kCmPerPt;
    }
    return d.value;
}

AbsPoint resolve_point(const PointExpr &expr, const NodeEnv &env, SourcePos pos) {
    if (auto *c = std::get_if<Cartesian>(&expr))
        return {c->x, c->y};
    if (auto *p = std::get_if<Polar>(&expr))
        return direction(p->r, p->theta);
    if (auto *n = std::get_if<NodeRef>(&expr))
        return env.at(n->name, pos);
    const auto &o = std::get<Offset>(expr);
    const AbsPoint &base = env.at(o.base, pos);
    if (o.nodesep == 0.0)
        return base;
    AbsPoint d = direction(o.nodesep, o.angle);
    return {base.x + d.x, base.y + d.y};
}

ResolvedPicture resolve_picture(const Picture &picture, double unit_cm) {
    return resolve_picture(picture, ResolveSettings{unit_cm, default_linewidth_cm()});
}

ResolvedPicture resolve_picture(const Picture &picture, const ResolveSettings &settings) {
    if (!(settings.unit_cm > 0.0) || !std::isfinite(settings.unit_cm))
        throw ResolveError(picture.pos, "unit must be positive");
    if (!(settings.linewidth_cm > 0.0))
        throw ResolveError(picture.pos, "linewidth must be positive");

    ResolvedPicture out;
    out.unit_cm = settings.unit_cm;
    out.bbox_lo = {picture.bbox_lo.x, picture.bbox_lo.y};
    out.bbox_hi = {picture.bbox_hi.x, picture.bbox_hi.y};

    WalkState state{settings.unit_cm, settings.unit_cm, settings.linewidth_cm};

    for (const auto &[command, pos] : picture.commands) {
        if (auto *line = std::get_if<PsLine>(&command)) {
            out.elements.push_back({ElementKind::polyline, resolve_all(line->points, out.nodes, state, pos),
                                    linewidth_of(line->options, state, pos), pos});
        } else if (auto *curve = std::get_if<PsCCurve>(&command)) {
            out.elements.push_back({ElementKind::closed_curve, resolve_all(curve->points, out.nodes, state, pos),
                                    linewidth_of(curve->options, state, pos), pos});
        } else if (auto *node = std::get_if<PNode>(&command)) {
            out.nodes.bind(node->name, resolve_point(rescaled(node->point, state.scale()), out.nodes, pos), pos);
        } else if (auto *set = std::get_if<PsSet>(&command)) {
            if (const std::string *unit = set->options.find("unit")) {
                double cm = dimension_option("unit", *unit, pos);
                if (!(cm > 0.0))
                    throw ResolveError(pos, "unit must be positive, got '" + *unit + "'");
                state.unit_cm = cm;
            }
            if (set->options.find("linewidth") != nullptr)
                state.linewidth_cm = linewidth_of(set->options, state, pos);
        }
    }
    return out;
}

std::vector<ResolvedPicture> resolve_document(const DocumentTree &doc) {
    ResolveSettings settings;
    settings.unit_cm = convert_dimension(doc.unit);
    if (doc.linewidth)
        settings.linewidth_cm = convert_dimension(*doc.linewidth);
    std::vector<ResolvedPicture> out;
    out.reserve(doc.pictures.size());
    for (const auto &picture : doc.pictures)
        out.push_back(resolve_picture(picture, settings));
    return out;
}

} // namespace psfig
