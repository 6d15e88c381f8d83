#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "psfig/resolver.hpp"

namespace psfig {

struct CubicSegment {
    AbsPoint p0;
    AbsPoint c1;
    AbsPoint c2;
    AbsPoint p3;

    bool operator==(const CubicSegment &) const = default;
};

struct BezierChain {
    std::vector<CubicSegment> segments;
    bool closed = false;
};

class CurveError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Closed uniform Catmull-Rom spline through `points`, in Bezier form.
///
/// Segment i runs from P[i] to P[i+1] with
///   C1 = P[i]   + (1 - tension) * (P[i+1] - P[i-1]) / 6
///   C2 = P[i+1] - (1 - tension) * (P[i+2] - P[i]) / 6
/// with indices taken mod n. Needs n >= 3, finite points, no two cyclically
/// consecutive points equal, and tension in [0, 1).
BezierChain closed_spline(std::span<const AbsPoint> points, double tension = 0.0);

AbsPoint evaluate(const CubicSegment &segment, double t);

/// Uniform samples t = k / samples_per_segment of every segment. Closed chains
/// emit segments * samples_per_segment points; open chains also emit the final
/// endpoint.
std::vector<AbsPoint> sample_chain(const BezierChain &chain, int samples_per_segment);

/// One chain per closed_curve element of `picture`, in element order.
std::vector<BezierChain> expand_curves(const ResolvedPicture &picture, double tension = 0.0);

} // namespace psfig
