#include "psfig/svg.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include <json.hpp>

namespace psfig {

namespace {

class PathWriter {
public:
    PathWriter(double scale, int precision) : scale_(scale), precision_(precision) {}

    void op(char c) {
        if (!d_.empty())
            d_ += ' ';
        d_ += c;
    }

    void point(const AbsPoint &p, bool lead_space = true) {
        if (lead_space)
            d_ += ' ';
        d_ += format_fixed(p.x * scale_, precision_);
        d_ += ',';
        d_ += format_fixed(-(p.y * scale_), precision_);
    }

    const std::string &str() const { return d_; }

private:
    double scale_;
    int precision_;
    std::string d_;
};

double round_significant(double value, int digits) {
    if (value == 0.0 || !std::isfinite(value))
        return value == 0.0 ? 0.0 : value;
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, digits);
    double out = value;
    std::from_chars(buf, end, out);
    return out == 0.0 ? 0.0 : out;
}

nlohmann::ordered_json json_point(const AbsPoint &p) {
    return nlohmann::ordered_json::array({round_significant(p.x, 12), round_significant(p.y, 12)});
}

} // namespace

std::string format_fixed(double value, int precision) {
    char buf[512];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
    if (ec != std::errc{})
        throw std::invalid_argument("number too large to format");
    std::string out(buf, end);
    if (!out.empty() && out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos)
        out.erase(0, 1);
    return out;
}

std::string emit_svg(const ResolvedPicture &picture, std::span<const BezierChain> chains, const SvgConfig &config) {
    if (config.precision < 1 || config.precision > 12)
        throw std::invalid_argument("precision must be in [1, 12]");
    if (!(config.margin_units >= 0.0))
        throw std::invalid_argument("margin must be non-negative");
    if (!(config.px_per_cm > 0.0))
        throw std::invalid_argument("px_per_cm must be positive");

    const int prec = config.precision;
    const double scale = picture.unit_cm * config.px_per_cm;
    const double m = config.margin_units;
    const double width = (picture.bbox_hi.x - picture.bbox_lo.x + 2.0 * m) * scale;
    const double height = (picture.bbox_hi.y - picture.bbox_lo.y + 2.0 * m) * scale;
    const double min_x = (picture.bbox_lo.x - m) * scale;
    const double min_y = -((picture.bbox_hi.y + m) * scale);

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + format_fixed(width, prec) +
           "\" height=\"" + format_fixed(height, prec) + "\" viewBox=\"" + format_fixed(min_x, prec) + " " +
           format_fixed(min_y, prec) + " " + format_fixed(width, prec) + " " + format_fixed(height, prec) +
           "\" overflow=\"visible\">\n";

    std::size_t next_chain = 0;
    for (const auto &element : picture.elements) {
        PathWriter path(scale, prec);
        if (element.kind == ElementKind::polyline) {
            path.op('M');
            path.point(element.points.front(), false);
            for (std::size_t i = 1; i < element.points.size(); ++i) {
                path.op('L');
                path.point(element.points[i], false);
            }
        } else {
            if (next_chain >= chains.size())
                throw std::invalid_argument("missing Bezier chain for closed curve");
            const BezierChain &chain = chains[next_chain++];
            path.op('M');
            path.point(chain.segments.front().p0, false);
            for (const auto &s : chain.segments) {
                path.op('C');
                path.point(s.c1, false);
                path.point(s.c2);
                path.point(s.p3);
            }
            path.op('Z');
        }
        out += "<path d=\"" + path.str() + "\" fill=\"none\" stroke=\"black\" stroke-width=\"" +
               format_fixed(element.linewidth_cm * config.px_per_cm, prec) +
               "\" stroke-linecap=\"round\" stroke-linejoin=\"round\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string emit_resolved_json(double unit_cm, std::span<const RenderedPicture> pictures) {
    using json = nlohmann::ordered_json;
    json doc = json::object();
    doc["unit_cm"] = round_significant(unit_cm, 12);
    json pics = json::array();
    for (const auto &rendered : pictures) {
        const ResolvedPicture &pic = rendered.picture;
        json p = json::object();
        p["bbox"] = json::array({json_point(pic.bbox_lo), json_point(pic.bbox_hi)});
        json elements = json::array();
        std::size_t next_chain = 0;
        for (const auto &element : pic.elements) {
            json e = json::object();
            bool curve = element.kind == ElementKind::closed_curve;
            e["kind"] = curve ? "closed_curve" : "polyline";
            e["linewidth_cm"] = round_significant(element.linewidth_cm, 12);
            json points = json::array();
            for (const auto &pt : element.points)
                points.push_back(json_point(pt));
            e["points"] = std::move(points);
            if (curve) {
                if (next_chain >= rendered.chains.size())
                    throw std::invalid_argument("missing Bezier chain for closed curve");
                json beziers = json::array();
                for (const auto &s : rendered.chains[next_chain++].segments)
                    beziers.push_back(json::array({json_point(s.p0), json_point(s.c1), json_point(s.c2), json_point(s.p3)}));
                e["beziers"] = std::move(beziers);
            }
            elements.push_back(std::move(e));
        }
        p["elements"] = std::move(elements);
        pics.push_back(std::move(p));
    }
    doc["pictures"] = std::move(pics);
    return doc.dump() + "\n";
}

} // namespace psfig
