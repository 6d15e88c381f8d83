#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "psfig/parser.hpp"
#include "psfig/resolver.hpp"
#include "test_support.hpp"

using namespace psfig;

namespace {

// Reference values computed independently at 40 digits (mpmath) and rounded.
constexpr double kRay210X = -4.763139720814413; // 5.5 cos 210 = -5.5 sqrt(3) / 2
constexpr double kRay330X = 5.196152422706632;  // 6 cos 330 = 3 sqrt(3)
constexpr double kSixRootThree = 10.392304845413264;

const AbsPoint kV{kRay330X, -3.0};

NodeEnv env_with_v() {
    NodeEnv env;
    env.bind("V", kV, {});
    return env;
}

void check_near(AbsPoint got, AbsPoint want, double tol) {
    CHECK(std::abs(got.x - want.x) <= tol);
    CHECK(std::abs(got.y - want.y) <= tol);
}

std::vector<ResolvedPicture> seed() { return resolve_document(parse_document(testing::seed_document())); }

} // namespace

TEST_CASE("convert_dimension") {
    CHECK(convert_dimension({0.5, LengthUnit::cm}) == 0.5);
    CHECK(convert_dimension({1, LengthUnit::in}) == doctest::Approx(2.54).epsilon(1e-15));
    CHECK(convert_dimension({10, LengthUnit::mm}) == doctest::Approx(1.0).epsilon(1e-15));
    // 2 * 2.54 / 72.27 = 0.0702919607029196...
    CHECK(std::abs(convert_dimension({2, LengthUnit::pt}) - 0.070291960702919607) < 1e-15);
    CHECK(std::abs(default_linewidth_cm() - 0.028116784281167843) < 1e-15);
}

TEST_CASE("resolve_point examples") {
    NodeEnv env = env_with_v();
    CHECK(resolve_point(Polar{5, 90}, env) == AbsPoint{0, 5});
    check_near(resolve_point(Polar{5.5, 210}, env), {kRay210X, -2.75}, 1e-12);
    check_near(resolve_point(Polar{6, 330}, env), {kRay330X, -3.0}, 1e-12);
    check_near(resolve_point(Offset{30, 6, "V"}, env), {kSixRootThree, 0.0}, 1e-12);
    CHECK(resolve_point(Offset{270, 3.5, "V"}, env) == AbsPoint{kRay330X, -6.5});
    CHECK(resolve_point(NodeRef{"V"}, env) == kV);
    CHECK(resolve_point(Cartesian{-1.25, 3}, env) == AbsPoint{-1.25, 3});
}

TEST_CASE("negative nodesep points the other way") {
    NodeEnv env = env_with_v();
    AbsPoint fwd = resolve_point(Offset{30, 2, "V"}, env);
    AbsPoint back = resolve_point(Offset{30, -2, "V"}, env);
    check_near({fwd.x + back.x, fwd.y + back.y}, {2 * kV.x, 2 * kV.y}, 1e-12);
}

TEST_CASE("unbound node is an error naming the node and line") {
    NodeEnv env;
    try {
        resolve_point(NodeRef{"Q"}, env, SourcePos{7, 3});
        FAIL("expected error");
    } catch (const ResolveError &e) {
        CHECK(e.node() == "Q");
        CHECK(e.pos().line == 7);
        CHECK(std::string(e.what()).find("'Q'") != std::string::npos);
        CHECK(std::string(e.what()).find("line 7") != std::string::npos);
    }
    CHECK_THROWS_AS(resolve_point(Offset{0, 1, "Q"}, env), ResolveError);
}

TEST_CASE("use before definition fails even if defined later") {
    auto doc = parse_document(testing::read_text(testing::data_dir() / "unbound_node.tex"));
    try {
        resolve_document(doc);
        FAIL("expected error");
    } catch (const ResolveError &e) {
        CHECK(e.node() == "Q");
        CHECK(e.pos().line == 3);
    }
}

TEST_CASE("property: polar round trip") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> radius(1e-3, 50.0), angle(-720.0, 720.0);
    NodeEnv env;
    for (int i = 0; i < 500; ++i) {
        double r = radius(rng), theta = angle(rng);
        AbsPoint p = resolve_point(Polar{r, theta}, env);
        CHECK(std::abs(std::hypot(p.x, p.y) - r) <= 1e-9);
        double back = std::atan2(p.y, p.x) * 180.0 / std::numbers::pi;
        double diff = std::fmod(back - theta, 360.0);
        diff = std::fmod(diff + 540.0, 360.0) - 180.0;
        CHECK(std::abs(diff) <= 1e-9);
    }
    for (double theta : {0.0, 45.0, 210.0, -30.0})
        CHECK(resolve_point(Polar{0, theta}, env) == AbsPoint{0, 0});
}

TEST_CASE("property: offset identity and linearity") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> coord(-10, 10), angle(0, 360), sep(-5, 5);
    for (int i = 0; i < 500; ++i) {
        NodeEnv env;
        AbsPoint base{coord(rng), coord(rng)};
        env.bind("N", base, {});
        double a = angle(rng), d1 = sep(rng), d2 = sep(rng);

        AbsPoint same = resolve_point(Offset{a, 0.0, "N"}, env);
        CHECK(std::memcmp(&same, &base, sizeof base) == 0);

        AbsPoint direct = resolve_point(Offset{a, d1 + d2, "N"}, env);
        env.bind("M", resolve_point(Offset{a, d1, "N"}, env), {});
        AbsPoint chained = resolve_point(Offset{a, d2, "M"}, env);
        check_near(direct, chained, 1e-12);
    }
}

TEST_CASE("property: translating inputs translates the picture") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> coord(-10, 10), angle(0, 360), sep(0.1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        Vec2 t{coord(rng), coord(rng)};
        Picture plain, moved;
        plain.bbox_lo = moved.bbox_lo = {-5, -5};
        plain.bbox_hi = moved.bbox_hi = {5, 5};
        auto add = [&](Command a, Command b) {
            plain.commands.push_back({std::move(a), {}});
            moved.commands.push_back({std::move(b), {}});
        };
        // polar input expressed as its Cartesian image so it can be shifted
        double r = sep(rng), th = angle(rng);
        AbsPoint polar = resolve_point(Polar{r, th}, NodeEnv{});
        add(PNode{Cartesian{polar.x, polar.y}, "P"}, PNode{Cartesian{polar.x + t.x, polar.y + t.y}, "P"});
        Cartesian c{coord(rng), coord(rng)};
        add(PNode{c, "A"}, PNode{Cartesian{c.x + t.x, c.y + t.y}, "A"});
        Offset o{angle(rng), sep(rng), "A"};
        add(PNode{o, "B"}, PNode{o, "B"});
        std::vector<PointExpr> pts{NodeRef{"A"}, NodeRef{"B"}, NodeRef{"P"}, Offset{angle(rng), sep(rng), "B"}};
        add(PsLine{{}, pts}, PsLine{{}, pts});
        add(PsCCurve{{}, pts}, PsCCurve{{}, pts});

        ResolvedPicture a = resolve_picture(plain, 1.0);
        ResolvedPicture b = resolve_picture(moved, 1.0);
        REQUIRE(a.elements.size() == b.elements.size());
        for (std::size_t e = 0; e < a.elements.size(); ++e) {
            for (std::size_t k = 0; k < a.elements[e].points.size(); ++k) {
                AbsPoint p = a.elements[e].points[k], q = b.elements[e].points[k];
                check_near({p.x + t.x, p.y + t.y}, q, 1e-12);
            }
        }
    }
}

TEST_CASE("first seed picture resolves to the three rays and their curve") {
    auto pics = seed();
    REQUIRE(pics.size() == 3);
    const ResolvedPicture &first = pics[0];
    CHECK(first.unit_cm == 0.5);
    REQUIRE(first.elements.size() == 4);
    const AbsPoint ends[] = {{0, 5}, {kRay210X, -2.75}, {kRay330X, -3.0}};
    for (int i = 0; i < 3; ++i) {
        const auto &e = first.elements[static_cast<std::size_t>(i)];
        CHECK(e.kind == ElementKind::polyline);
        REQUIRE(e.points.size() == 2);
        CHECK(e.points[0] == AbsPoint{0, 0});
        check_near(e.points[1], ends[i], 1e-12);
        CHECK(std::abs(e.linewidth_cm - 0.070291960702919607) < 1e-15);
    }
    const auto &curve = first.elements[3];
    CHECK(curve.kind == ElementKind::closed_curve);
    REQUIRE(curve.points.size() == 3);
    for (int i = 0; i < 3; ++i)
        check_near(curve.points[static_cast<std::size_t>(i)], ends[i], 1e-12);
    CHECK(curve.linewidth_cm == default_linewidth_cm());
    CHECK(first.nodes.size() == 0);
}

TEST_CASE("second and third seed pictures: counts and node scoping") {
    auto pics = seed();
    CHECK(pics[1].elements.size() == 6);
    CHECK(pics[1].nodes.size() == 8);
    CHECK(pics[1].elements.back().points.size() == 7);
    check_near(pics[1].nodes.at("D", {}), {kSixRootThree, 0.0}, 1e-12);
    check_near(pics[1].nodes.at("A", {}), {0, 7.5}, 1e-12);

    CHECK(pics[2].elements.size() == 13);
    int polylines = 0;
    for (const auto &e : pics[2].elements)
        polylines += e.kind == ElementKind::polyline ? 1 : 0;
    CHECK(polylines == 12);
    CHECK(pics[2].nodes.size() == 11);
    check_near(pics[2].nodes.at("A", {}), {kRay330X, -3.0}, 1e-12);
    CHECK(pics[2].elements.back().points.size() == 6);
    CHECK(pics[2].nodes.find("V") == nullptr);
}

TEST_CASE("points outside the bounding box are kept") {
    auto pics = seed();
    const auto &line = pics[1].elements[3]; // (6;330) -> D
    CHECK(line.points[1].x > pics[1].bbox_hi.x);
}

TEST_CASE("nodes draw nothing; rebinding warns and the last binding wins") {
    auto doc = parse_document(testing::picture("\\pnode(0,0){X}"));
    ResolvedPicture pic = resolve_picture(doc.pictures[0], 1.0);
    CHECK(pic.elements.empty());
    CHECK(pic.nodes.size() == 1);
    CHECK(pic.nodes.find("X") != nullptr);

    doc = parse_document(testing::picture("\\pnode(0,0){X}\n\\pnode(1,2){X}\n\\psline(0,0)(X)"));
    pic = resolve_picture(doc.pictures[0], 1.0);
    REQUIRE(pic.nodes.warnings().size() == 1);
    CHECK(pic.nodes.warnings()[0].pos.line == 4);
    CHECK(pic.elements[0].points[1] == AbsPoint{1, 2});
}

TEST_CASE("linewidth handling") {
    auto doc = parse_document(testing::picture("\\psline[linewidth=-1pt](0,0)(1,1)"));
    CHECK_THROWS_AS(resolve_picture(doc.pictures[0], 1.0), ResolveError);
    doc = parse_document(testing::picture("\\psline[linewidth=0cm](0,0)(1,1)"));
    CHECK_THROWS_AS(resolve_picture(doc.pictures[0], 1.0), ResolveError);
    doc = parse_document(testing::picture("\\psline[linewidth=1mm](0,0)(1,1)"));
    CHECK(resolve_picture(doc.pictures[0], 1.0).elements[0].linewidth_cm == doctest::Approx(0.1));
    CHECK_THROWS_AS(resolve_picture(doc.pictures[0], 0.0), ResolveError);
}

TEST_CASE("picture-level psset applies to the rest of the picture") {
    auto doc = parse_document(testing::document("\\psset{unit=0.5cm}\n\\begin{pspicture}(0,0)(4,4)\n"
                                                "\\psline(0,0)(1,0)\n\\psset{unit=1cm,linewidth=1mm}\n"
                                                "\\psline(0,0)(1,0)\n\\end{pspicture}\n"
                                                "\\begin{pspicture}(0,0)(4,4)\\psline(0,0)(1,0)\\end{pspicture}"));
    auto pics = resolve_document(doc);
    CHECK(pics[0].unit_cm == 0.5);
    CHECK(pics[0].elements[0].points[1] == AbsPoint{1, 0});
    // 1cm is two picture units at 0.5cm/unit
    CHECK(pics[0].elements[1].points[1] == AbsPoint{2, 0});
    CHECK(pics[0].elements[1].linewidth_cm == doctest::Approx(0.1));
    CHECK(pics[0].elements[0].linewidth_cm == default_linewidth_cm());
    // the next picture starts from the document settings again
    CHECK(pics[1].elements[0].points[1] == AbsPoint{1, 0});
    CHECK(pics[1].elements[0].linewidth_cm == default_linewidth_cm());
}
