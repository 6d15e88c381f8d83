#include "psfig/syntax.hpp"

#include <charconv>
#include <stdexcept>

namespace psfig {

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

std::string points_to_source(const std::vector<PointExpr> &points) {
    std::string out;
    for (const auto &p : points)
        out += to_source(p);
    return out;
}

std::string bracketed(const OptionList &options) {
    return options.empty() ? std::string{} : "[" + to_source(options) + "]";
}

} // namespace

std::string_view unit_tag(LengthUnit unit) {
    switch (unit) {
    case LengthUnit::cm:
        return "cm";
    case LengthUnit::mm:
        return "mm";
    case LengthUnit::pt:
        return "pt";
    case LengthUnit::in:
        return "in";
    }
    return "cm";
}

OptionList::OptionList(std::vector<Entry> entries) {
    for (auto &[key, value] : entries) {
        if (!add(std::move(key), std::move(value)))
            throw std::invalid_argument("duplicate option key");
    }
}

bool OptionList::add(std::string key, std::string value) {
    if (find(key) != nullptr)
        return false;
    entries_.emplace_back(std::move(key), std::move(value));
    return true;
}

void OptionList::set(std::string key, std::string value) {
    for (auto &entry : entries_) {
        if (entry.first == key) {
            entry.second = std::move(value);
            return;
        }
    }
    entries_.emplace_back(std::move(key), std::move(value));
}

const std::string *OptionList::find(std::string_view key) const {
    for (const auto &entry : entries_) {
        if (entry.first == key)
            return &entry.second;
    }
    return nullptr;
}

bool is_identifier(std::string_view text) {
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (text.empty() || !alpha(text.front()))
        return false;
    for (char c : text.substr(1)) {
        if (!alpha(c) && !digit(c))
            return false;
    }
    return true;
}

std::string format_number(double value) {
    char buf[400];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
    if (ec != std::errc{})
        throw std::invalid_argument("number cannot be formatted");
    std::string out(buf, end);
    if (out == "-0")
        out = "0";
    return out;
}

std::string to_source(const PointExpr &point) {
    return std::visit(
        overloaded{
            [](const Cartesian &p) { return "(" + format_number(p.x) + "," + format_number(p.y) + ")"; },
            [](const Polar &p) { return "(" + format_number(p.r) + ";" + format_number(p.theta) + ")"; },
            [](const NodeRef &p) { return "(" + p.name + ")"; },
            [](const Offset &p) {
                return "([angle=" + format_number(p.angle) + ",nodesep=" + format_number(p.nodesep) + "]" +
                       p.base + ")";
            },
        },
        point);
}

std::string to_source(const OptionList &options) {
    std::string out;
    for (const auto &[key, value] : options.entries()) {
        if (!out.empty())
            out += ',';
        out += key + "=" + value;
    }
    return out;
}

std::string to_source(const Command &command) {
    return std::visit(
        overloaded{
            [](const PsLine &c) { return "\\psline" + bracketed(c.options) + points_to_source(c.points); },
            [](const PsCCurve &c) { return "\\psccurve" + bracketed(c.options) + points_to_source(c.points); },
            [](const PNode &c) { return "\\pnode" + to_source(c.point) + "{" + c.name + "}"; },
            [](const PsSet &c) { return "\\psset{" + to_source(c.options) + "}"; },
        },
        command);
}

std::string_view command_name(const Command &command) {
    static constexpr std::string_view names[] = {"psline", "psccurve", "pnode", "psset"};
    return names[command.index()];
}

} // namespace psfig
