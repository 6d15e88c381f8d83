#pragma once

#include <span>
#include <string>

#include "psfig/curve.hpp"
#include "psfig/resolver.hpp"

namespace psfig {

struct SvgConfig {
    /// Decimal places for every number written, 1..12.
    int precision = 4;
    /// Extra space around the bounding box, in picture units.
    double margin_units = 0.0;
    double px_per_cm = 96.0 / 2.54;
};

/// A resolved picture plus the Bezier expansion of each of its closed curves
/// (same order as the closed_curve elements).
struct RenderedPicture {
    ResolvedPicture picture;
    std::vector<BezierChain> chains;
};

/// Fixed-point with exactly `precision` decimals; "-0.00" is written as "0.00".
std::string format_fixed(double value, int precision);

/// Standalone SVG 1.1 document for one picture. Picture coordinates are
/// scaled by unit_cm * px_per_cm and y is negated; the viewBox covers the
/// bounding box (plus margin) and nothing is clipped.
std::string emit_svg(const ResolvedPicture &picture, std::span<const BezierChain> chains,
                     const SvgConfig &config = {});

/// JSON dump of resolved geometry. Numbers carry 12 significant digits.
std::string emit_resolved_json(double unit_cm, std::span<const RenderedPicture> pictures);

} // namespace psfig
