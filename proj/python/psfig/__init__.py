"""PSTricks picture subset: parse, resolve geometry, fit closed splines, emit SVG."""

from ._psfig import (
    BezierChain,
    CurveError,
    DimensionError,
    ParseError,
    ResolvedElement,
    ResolvedPicture,
    ResolveError,
    closed_spline,
    parse_dimension,
    parse_document,
    parse_point,
    render_json,
    render_svg,
    resolve_document,
    sample_chain,
    to_cm,
)

__all__ = [
    "BezierChain",
    "CurveError",
    "DimensionError",
    "ParseError",
    "ResolvedElement",
    "ResolvedPicture",
    "ResolveError",
    "closed_spline",
    "parse_dimension",
    "parse_document",
    "parse_point",
    "render_json",
    "render_svg",
    "resolve_document",
    "sample_chain",
    "to_cm",
]
