#include <array>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "psfig/curve.hpp"
#include "psfig/parser.hpp"
#include "psfig/resolver.hpp"
#include "psfig/svg.hpp"

namespace py = pybind11;

namespace {

using XY = std::array<double, 2>;

PyObject *parse_error_type = nullptr;
PyObject *resolve_error_type = nullptr;

XY xy(const psfig::AbsPoint &p) { return {p.x, p.y}; }

std::vector<psfig::RenderedPicture> render(const psfig::DocumentTree &doc, double tension) {
    std::vector<psfig::RenderedPicture> out;
    for (auto &picture : psfig::resolve_document(doc)) {
        psfig::RenderedPicture r{std::move(picture), {}};
        r.chains = psfig::expand_curves(r.picture, tension);
        out.push_back(std::move(r));
    }
    return out;
}

py::dict point_dict(const psfig::PointExpr &expr) {
    py::dict d;
    if (auto *c = std::get_if<psfig::Cartesian>(&expr)) {
        d["kind"] = "cartesian";
        d["x"] = c->x;
        d["y"] = c->y;
    } else if (auto *p = std::get_if<psfig::Polar>(&expr)) {
        d["kind"] = "polar";
        d["r"] = p->r;
        d["theta"] = p->theta;
    } else if (auto *n = std::get_if<psfig::NodeRef>(&expr)) {
        d["kind"] = "node";
        d["name"] = n->name;
    } else {
        const auto &o = std::get<psfig::Offset>(expr);
        d["kind"] = "offset";
        d["angle"] = o.angle;
        d["nodesep"] = o.nodesep;
        d["base"] = o.base;
    }
    return d;
}

py::dict document_dict(const psfig::DocumentTree &doc) {
    py::dict d;
    d["unit"] = py::make_tuple(doc.unit.value, std::string(psfig::unit_tag(doc.unit.unit)));
    py::list pictures;
    for (const auto &pic : doc.pictures) {
        py::dict p;
        p["bbox"] = py::make_tuple(py::make_tuple(pic.bbox_lo.x, pic.bbox_lo.y),
                                   py::make_tuple(pic.bbox_hi.x, pic.bbox_hi.y));
        py::list commands;
        for (const auto &[command, pos] : pic.commands) {
            py::dict c;
            c["command"] = std::string(psfig::command_name(command));
            c["source"] = psfig::to_source(command);
            c["line"] = pos.line;
            c["column"] = pos.column;
            commands.append(c);
        }
        p["commands"] = commands;
        pictures.append(p);
    }
    d["pictures"] = pictures;
    py::list warnings;
    for (const auto &w : doc.warnings)
        warnings.append(py::make_tuple(w.pos.line, w.pos.column, w.message));
    d["warnings"] = warnings;
    return d;
}

} // namespace

PYBIND11_MODULE(_psfig, m) {
    m.doc() = "PSTricks picture subset: parsing, geometry resolution, closed splines and SVG output.";

    parse_error_type = py::register_exception<psfig::ParseError>(m, "ParseError", PyExc_ValueError).ptr();
    resolve_error_type = py::register_exception<psfig::ResolveError>(m, "ResolveError", PyExc_ValueError).ptr();
    py::register_exception<psfig::DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<psfig::CurveError>(m, "CurveError", PyExc_ValueError);
    // (message, line, column, snippet-or-node) as exception args
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const psfig::ParseError &e) {
            py::object args = py::make_tuple(e.message(), e.line(), e.column(), e.snippet());
            PyErr_SetObject(parse_error_type, args.ptr());
        } catch (const psfig::ResolveError &e) {
            py::object args = py::make_tuple(e.message(), e.pos().line, e.pos().column, e.node());
            PyErr_SetObject(resolve_error_type, args.ptr());
        }
    });

    py::class_<psfig::ResolvedElement>(m, "ResolvedElement")
        .def_property_readonly("kind",
                               [](const psfig::ResolvedElement &e) {
                                   return e.kind == psfig::ElementKind::polyline ? "polyline" : "closed_curve";
                               })
        .def_property_readonly("points",
                               [](const psfig::ResolvedElement &e) {
                                   std::vector<XY> out;
                                   for (const auto &p : e.points)
                                       out.push_back(xy(p));
                                   return out;
                               })
        .def_readonly("linewidth_cm", &psfig::ResolvedElement::linewidth_cm)
        .def_property_readonly("line", [](const psfig::ResolvedElement &e) { return e.pos.line; });

    py::class_<psfig::ResolvedPicture>(m, "ResolvedPicture")
        .def_property_readonly("bbox_lo", [](const psfig::ResolvedPicture &p) { return xy(p.bbox_lo); })
        .def_property_readonly("bbox_hi", [](const psfig::ResolvedPicture &p) { return xy(p.bbox_hi); })
        .def_readonly("unit_cm", &psfig::ResolvedPicture::unit_cm)
        .def_readonly("elements", &psfig::ResolvedPicture::elements)
        .def_property_readonly("nodes", [](const psfig::ResolvedPicture &p) {
            py::dict d;
            for (const auto &[name, point] : p.nodes.bindings())
                d[py::str(name)] = xy(point);
            return d;
        });

    py::class_<psfig::BezierChain>(m, "BezierChain")
        .def_readonly("closed", &psfig::BezierChain::closed)
        .def_property_readonly("segments",
                               [](const psfig::BezierChain &c) {
                                   std::vector<std::array<XY, 4>> out;
                                   for (const auto &s : c.segments)
                                       out.push_back({xy(s.p0), xy(s.c1), xy(s.c2), xy(s.p3)});
                                   return out;
                               })
        .def("__len__", [](const psfig::BezierChain &c) { return c.segments.size(); });

    m.def(
        "parse_dimension",
        [](const std::string &raw) {
            psfig::Dimension d = psfig::parse_dimension(raw);
            return py::make_tuple(d.value, std::string(psfig::unit_tag(d.unit)));
        },
        py::arg("raw"), "Parse a TeX length such as '2pt' into (value, unit).");
    m.def(
        "to_cm", [](const std::string &raw) { return psfig::convert_dimension(psfig::parse_dimension(raw)); },
        py::arg("raw"), "Convert a TeX length to centimetres.");
    m.def(
        "parse_point", [](const std::string &text) { return point_dict(psfig::parse_point(text)); },
        py::arg("text"));
    m.def(
        "parse_document",
        [](const std::string &text, bool strict) {
            return document_dict(psfig::parse_document(text, psfig::ParseOptions{strict}));
        },
        py::arg("text"), py::arg("strict") = true);
    m.def(
        "resolve_document",
        [](const std::string &text, bool strict) {
            return psfig::resolve_document(psfig::parse_document(text, psfig::ParseOptions{strict}));
        },
        py::arg("text"), py::arg("strict") = true);
    m.def(
        "closed_spline",
        [](const std::vector<XY> &points, double tension) {
            std::vector<psfig::AbsPoint> pts;
            for (const auto &p : points)
                pts.push_back({p[0], p[1]});
            return psfig::closed_spline(pts, tension);
        },
        py::arg("points"), py::arg("tension") = 0.0);
    m.def(
        "sample_chain",
        [](const psfig::BezierChain &chain, int samples) {
            std::vector<XY> out;
            for (const auto &p : psfig::sample_chain(chain, samples))
                out.push_back(xy(p));
            return out;
        },
        py::arg("chain"), py::arg("samples_per_segment"));
    m.def(
        "render_svg",
        [](const std::string &text, double tension, int precision, double margin, bool strict) {
            std::vector<std::string> out;
            psfig::SvgConfig config{precision, margin};
            psfig::DocumentTree doc = psfig::parse_document(text, psfig::ParseOptions{strict});
            for (const auto &r : render(doc, tension))
                out.push_back(psfig::emit_svg(r.picture, r.chains, config));
            return out;
        },
        py::arg("text"), py::arg("tension") = 0.0, py::arg("precision") = 4, py::arg("margin") = 0.0,
        py::arg("strict") = true, "Render every picture of a document; one SVG string per picture.");
    m.def(
        "render_json",
        [](const std::string &text, double tension, bool strict) {
            psfig::DocumentTree doc = psfig::parse_document(text, psfig::ParseOptions{strict});
            return psfig::emit_resolved_json(psfig::convert_dimension(doc.unit), render(doc, tension));
        },
        py::arg("text"), py::arg("tension") = 0.0, py::arg("strict") = true);
}
