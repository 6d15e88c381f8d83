#include "psfig/curve.hpp"

#include <cmath>
#include <string>

namespace psfig {

namespace {

AbsPoint lerp(AbsPoint a, AbsPoint b, double t) { return {std::lerp(a.x, b.x, t), std::lerp(a.y, b.y, t)}; }

} // namespace

BezierChain closed_spline(std::span<const AbsPoint> points, double tension) {
    const std::size_t n = points.size();
    if (n < 3)
        throw CurveError("closed spline needs at least 3 points, got " + std::to_string(n));
    if (!(tension >= 0.0 && tension < 1.0))
        throw CurveError("tension must be in [0, 1)");
    for (std::size_t i = 0; i < n; ++i) {
        const AbsPoint &p = points[i];
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw CurveError("non-finite point at index " + std::to_string(i));
        if (p == points[(i + 1) % n])
            throw CurveError("duplicate consecutive points at index " + std::to_string(i));
    }

    const double k = (1.0 - tension) / 6.0;
    auto at = [&](std::size_t i) -> const AbsPoint & { return points[i % n]; };

    BezierChain chain;
    chain.closed = true;
    chain.segments.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const AbsPoint &prev = at(i + n - 1);
        const AbsPoint &p0 = at(i);
        const AbsPoint &p3 = at(i + 1);
        const AbsPoint &next = at(i + 2);
        AbsPoint c1{p0.x + k * (p3.x - prev.x), p0.y + k * (p3.y - prev.y)};
        AbsPoint c2{p3.x - k * (next.x - p0.x), p3.y - k * (next.y - p0.y)};
        chain.segments.push_back({p0, c1, c2, p3});
    }
    return chain;
}

AbsPoint evaluate(const CubicSegment &s, double t) {
    // de Casteljau; std::lerp keeps t = 0 and t = 1 exact
    AbsPoint a = lerp(s.p0, s.c1, t);
    AbsPoint b = lerp(s.c1, s.c2, t);
    AbsPoint c = lerp(s.c2, s.p3, t);
    AbsPoint d = lerp(a, b, t);
    AbsPoint e = lerp(b, c, t);
    return lerp(d, e, t);
}

std::vector<AbsPoint> sample_chain(const BezierChain &chain, int samples_per_segment) {
    if (samples_per_segment < 1)
        throw CurveError("samples_per_segment must be at least 1");
    std::vector<AbsPoint> out;
    out.reserve(chain.segments.size() * static_cast<std::size_t>(samples_per_segment) + 1);
    for (const auto &segment : chain.segments) {
        for (int k = 0; k < samples_per_segment; ++k)
            out.push_back(evaluate(segment, static_cast<double>(k) / samples_per_segment));
    }
    if (!chain.closed && !chain.segments.empty())
        out.push_back(chain.segments.back().p3);
    return out;
}

std::vector<BezierChain> expand_curves(const ResolvedPicture &picture, double tension) {
    std::vector<BezierChain> chains;
    for (const auto &element : picture.elements) {
        if (element.kind == ElementKind::closed_curve)
            chains.push_back(closed_spline(element.points, tension));
    }
    return chains;
}

} // namespace psfig
