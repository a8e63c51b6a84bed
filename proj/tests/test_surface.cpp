#include "doctest.h"

#include "halfflat/complex.hpp"
#include "halfflat/corpus.hpp"
#include "halfflat/errors.hpp"

#include <cmath>
#include <numbers>

using namespace halfflat;

TEST_CASE("torus validates with one marked point") {
    const auto r = validate(make_torus());
    REQUIRE(r.ok);
    CHECK(r.genus == 1);
    REQUIRE(r.cone_points.size() == 1);
    CHECK(r.cone_points[0].multiple == 2);
    CHECK(r.area == 1);
    CHECK(r.warnings.size() == 1);
}

TEST_CASE("lshape has one 6pi cone point") {
    const auto r = validate(make_lshape());
    REQUIRE(r.ok);
    CHECK(r.genus == 2);
    REQUIRE(r.cone_points.size() == 1);
    CHECK(r.cone_points[0].multiple == 6);
    CHECK(r.area == 3);
}

TEST_CASE("genus2 family member") {
    const auto r = validate(make_genus2(Rational(1, 4)));
    REQUIRE(r.ok);
    CHECK(r.genus == 2);
    CHECK(std::abs(r.area.get_d() - 1) < 1e-14);
    for (const auto& cp : r.cone_points) CHECK(cp.multiple >= 2);
    CHECK_THROWS_AS(make_genus2(Rational(0)), ConstraintFailure);
    CHECK_THROWS_AS(make_genus2(Rational(3, 4)), ConstraintFailure);
    CHECK_THROWS_AS(corpus("sphere"), UnknownCorpusEntry);
}

TEST_CASE("non-parallel gluing reports holonomy mismatch") {
    // bottom edge glued to the right edge
    HalfTranslationSurface s("bad", {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}},
                             {{{0, 0}, {0, 1}, GluingMap::translation}, {{0, 2}, {0, 3}, GluingMap::translation}});
    const auto r = validate(s);
    CHECK_FALSE(r.ok);
    bool found = false;
    for (const auto& d : r.diagnostics) found |= d.find("holonomy mismatch") != std::string::npos;
    CHECK(found);
}

TEST_CASE("unglued edge and clockwise polygon are rejected") {
    HalfTranslationSurface open("open", {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}, {{{0, 0}, {0, 2}, GluingMap::translation}});
    CHECK_FALSE(validate(open).ok);
    HalfTranslationSurface cw("cw", {{{0, 0}, {0, 1}, {1, 1}, {1, 0}}},
                              {{{0, 0}, {0, 2}, GluingMap::translation}, {{0, 1}, {0, 3}, GluingMap::translation}});
    CHECK_FALSE(validate(cw).ok);
    CHECK_THROWS_AS(area(cw), InvalidSurface);
}

TEST_CASE("rotation gluings validate") {
    // two squares whose bottoms and tops are exchanged by half-turns
    const Polygon sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    HalfTranslationSurface s("rot", {sq, sq},
                             {{{0, 0}, {1, 0}, GluingMap::rotation_pi},
                              {{0, 1}, {0, 3}, GluingMap::translation},
                              {{0, 2}, {1, 2}, GluingMap::rotation_pi},
                              {{1, 1}, {1, 3}, GluingMap::translation}});
    const auto r = validate(s);
    REQUIRE(r.ok);
    CHECK(r.genus == 1);
    CHECK(r.cone_points.size() == 2);
    CHECK(s.gluing_map(0).eps == -1);
    HalfTranslationSurface bad("bad", {sq, sq},
                               {{{0, 0}, {1, 0}, GluingMap::translation},
                                {{0, 1}, {0, 3}, GluingMap::translation},
                                {{0, 2}, {1, 2}, GluingMap::rotation_pi},
                                {{1, 1}, {1, 3}, GluingMap::translation}});
    CHECK_FALSE(validate(bad).ok);
}

TEST_CASE("load and serialize round trip") {
    for (const auto& s : {make_torus(), make_lshape(), make_genus2(Rational(1, 3))}) {
        const std::string text = serialize(s);
        const auto back = load_surface(text);
        CHECK(serialize(back) == text);
        CHECK(back.polygons() == s.polygons());
        CHECK(back.same_combinatorics(s));
    }
    const auto n = normalize_area(make_lshape());
    CHECK(load_surface(serialize(n)).scale2() == Rational(1, 3));
}

TEST_CASE("load errors") {
    CHECK_THROWS_AS(load_surface("{"), ParseError);
    CHECK_THROWS_AS(load_surface(R"({"name":"x","polygons":[[["1/0","0"]]],"gluings":[]})"), ParseError);
    CHECK_THROWS_AS(load_surface(R"({"name":"x","polygons":[],"gluings":[{"from":[0,0],"to":[0,1],"map":"shear"}]})"),
                    ParseError);
    const auto t = load_surface(R"({"name":"t","polygons":[[["0","0"],["1","0"],["1","1"],["0","1"]]],
        "gluings":[{"from":[0,0],"to":[0,2],"map":"translation"},{"from":[0,1],"to":[0,3],"map":"translation"}]})");
    CHECK(t.polygons().size() == 1);
    CHECK(t.gluings().size() == 2);
    try {
        load_surface(R"({"name":"x","polygons":[[["0","0"],["a","0"]]],"gluings":[]})");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("polygons[0][1][0]") != std::string::npos);
    }
}

TEST_CASE("apply_linear and normalize_area") {
    const auto t = make_torus();
    const auto s = apply_linear(t, LinearDeformation::diagonal(2));
    CHECK(area(s) == 1);
    CHECK(s.polygons()[0][2] == Vec2(Rational(2), Rational(1, 2)));
    CHECK(apply_linear(t, LinearDeformation::identity()).polygons() == t.polygons());
    CHECK(area(normalize_area(make_lshape())) == 1);
    CHECK(normalize_area(t).scale2() == 1);
    CHECK_THROWS_AS(LinearDeformation(2, 0, 0, 1), InvalidSurface);
    const auto rot = LinearDeformation::rotation(0.3);
    CHECK_FALSE(rot.exact());
    CHECK(std::abs(rot.sigma_max() - 1) < 1e-12);
    const auto d = LinearDeformation::diagonal(2);
    CHECK(std::abs(d.sigma_max() - 2) < 1e-15);
    CHECK(std::abs(d.sigma_max() * d.sigma_min() - 1) < 1e-15);
}

TEST_CASE("deformed saddle length follows the stretch formula") {
    // holonomy of length 1 at angle pi/4, stretched by diag(2, 1/2)
    const double c = std::cos(std::numbers::pi / 4);
    const double expected = std::sqrt(std::pow(2 * c, 2) + std::pow(0.5 * c, 2));
    const Vec2 v = LinearDeformation::diagonal(2).apply(Vec2(rational_from_double(c), rational_from_double(c)));
    CHECK(std::abs(v.norm() - expected) < 1e-12);
    CHECK(std::abs(expected - 1.4577) < 1e-4);
}

TEST_CASE("invariants survive linear deformation") {
    for (const auto& s : {make_torus(), make_lshape(), make_genus2(Rational(1, 5))}) {
        const auto r0 = validate(s);
        for (const auto& A : {LinearDeformation::diagonal(3), LinearDeformation(1, 2, 0, 1), LinearDeformation(1, 0, -3, 1)}) {
            const auto r1 = validate(apply_linear(s, A));
            REQUIRE(r1.ok);
            CHECK(r1.genus == r0.genus);
            CHECK(r1.area == r0.area);
            std::vector<int> m0, m1;
            for (const auto& c : r0.cone_points) m0.push_back(c.multiple);
            for (const auto& c : r1.cone_points) m1.push_back(c.multiple);
            std::sort(m0.begin(), m0.end());
            std::sort(m1.begin(), m1.end());
            CHECK(m0 == m1);
            int excess = 0;
            for (int k : m1) excess += k - 2;
            CHECK(excess == 2 * (2 * r1.genus - 2));
        }
    }
}

TEST_CASE("complex corners go around each vertex") {
    for (const auto& s : {make_torus(), make_lshape(), make_genus2(Rational(1, 4))}) {
        const Complex& cx = s.complex();
        const auto r = validate(s);
        REQUIRE(cx.vertices().size() == r.cone_points.size());
        std::size_t corners = 0;
        for (std::size_t v = 0; v < cx.vertices().size(); ++v) {
            CHECK(cx.vertices()[v].multiple == r.cone_points[v].multiple);
            corners += cx.vertices()[v].corners.size();
            for (Corner c : cx.vertices()[v].corners) CHECK(cx.cw_next(cx.ccw_next(c)) == c);
        }
        CHECK(corners == 3 * cx.triangles().size());
        for (int t = 0; t < static_cast<int>(cx.triangles().size()); ++t)
            for (int k = 0; k < 3; ++k) {
                const TriLink& l = cx.tri(t).nb[k];
                const TriLink& back = cx.tri(l.tri).nb[l.edge];
                CHECK(back.tri == t);
                CHECK(back.edge == k);
                // the shared edge maps onto itself reversed
                CHECK(l.iso.apply(cx.tri(l.tri).p[l.edge]) == cx.tri(t).p[(k + 1) % 3]);
                CHECK(l.iso.apply(cx.tri(l.tri).p[(l.edge + 1) % 3]) == cx.tri(t).p[k]);
            }
    }
}
