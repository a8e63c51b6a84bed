#include "doctest.h"

#include "halfflat/corpus.hpp"
#include "halfflat/curves.hpp"
#include "halfflat/errors.hpp"

#include <cmath>
#include <numeric>
#include <numbers>
#include <random>

using namespace halfflat;

namespace {

CurveWord W(const char* s) { return CurveWord::parse(s); }

/// Random closed coherent word: a random walk through glued edges that returns to its first polygon.
CurveWord random_word(const HalfTranslationSurface& s, std::mt19937& rng, int min_len) {
    const auto& gl = s.gluings();
    std::vector<Crossing> out;
    const int start = std::uniform_int_distribution<int>(0, static_cast<int>(s.polygons().size()) - 1)(rng);
    int poly = start;
    for (int guard = 0; guard < 1000; ++guard) {
        std::vector<Crossing> options;
        for (int g = 0; g < static_cast<int>(gl.size()); ++g) {
            if (gl[g].from.polygon == poly) options.push_back({g, +1});
            if (gl[g].to.polygon == poly) options.push_back({g, -1});
        }
        const Crossing c = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
        out.push_back(c);
        poly = entry_polygon(s, c);
        if (poly == start && static_cast<int>(out.size()) >= min_len) break;
    }
    return CurveWord(out).reduced();
}

/// Closed polygonal curve through the midpoints of the crossed edges, as an upper bound on length.
double midpoint_path_length(const HalfTranslationSurface& s, const CurveWord& w) {
    const Sleeve sl = develop(s, w);
    std::vector<Vec2> mids;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Crossing c = w.steps()[i];
        const Gluing& g = s.gluings()[c.gluing];
        const EdgeRef e = c.sign > 0 ? g.from : g.to;
        const Polygon& P = s.polygons()[e.polygon];
        const Vec2 m = (P[e.edge] + P[(e.edge + 1) % P.size()]) * Rational(1, 2);
        mids.push_back(sl.placed[i].iso.apply(m));
    }
    mids.push_back(sl.holonomy.apply(sl.placed[0].iso.inverse().apply(mids[0])));
    double len = 0;
    for (std::size_t i = 0; i + 1 < mids.size(); ++i) len += (mids[i + 1] - mids[i]).norm();
    return len * s.scale();
}

}  // namespace

TEST_CASE("torus closed geodesics have lattice lengths") {
    const auto t = make_torus();
    CHECK(length(t, W("+1")) == doctest::Approx(1));
    CHECK(length(t, W("+0")) == doctest::Approx(1));
    CHECK(length(t, W("+1,+0")) == doctest::Approx(std::sqrt(2.0)));
    CHECK(length(t, W("+1,+1,+0")) == doctest::Approx(std::sqrt(5.0)));
    CHECK(length(t, W("+1,+0,+1,+0,+0")) == doctest::Approx(std::sqrt(13.0)));
    const FlatGeodesic g = tighten(t, W("+1,-0"));
    CHECK(g.cylinder);
    CHECK(g.visits.empty());
    CHECK(g.segments.size() == 1);
    CHECK(g.segments[0].theta == doctest::Approx(std::numbers::pi / 4));
}

TEST_CASE("trivial classes are rejected") {
    const auto t = make_torus();
    CHECK_THROWS_AS(tighten(t, W("+1,-1")), ContractibleCurve);
    CHECK_THROWS_AS(tighten(t, W("+1,+0,-1,-0")), ContractibleCurve);
    CHECK_THROWS_AS(tighten(t, CurveWord()), ContractibleCurve);
    const auto l = make_lshape();
    CHECK_THROWS_AS(tighten(l, W("+1,-1")), ContractibleCurve);
}

TEST_CASE("torus length scales under a diagonal deformation") {
    const auto t = apply_linear(make_torus(), LinearDeformation(Rational(2), Rational(0), Rational(0), make_rational(1, 2)));
    CHECK(length(t, W("+1")) == doctest::Approx(2));
    CHECK(length(t, W("+0")) == doctest::Approx(0.5));
    CHECK(length(t, W("+1,+0")) == doctest::Approx(std::sqrt(4.25)));
}

TEST_CASE("L-shape cylinder cores") {
    const auto l = make_lshape();
    CHECK(length(l, W("+5")) == doctest::Approx(1));
    CHECK(length(l, W("+4")) == doctest::Approx(1));
    CHECK(length(l, W("+1,-3")) == doctest::Approx(2));
    CHECK(length(l, W("+2,-0")) == doctest::Approx(2));
    CHECK(tighten(l, W("+5")).cylinder);
    CHECK(tighten(l, W("+1,-3")).cylinder);
}

TEST_CASE("L-shape singular geodesics satisfy the angle certificate") {
    const auto l = make_lshape();
    // horizontal core of the long cylinder followed by the vertical core of the tall one
    const FlatGeodesic g = tighten(l, W("+1,-3,+2,-0"));
    CHECK(g.length <= midpoint_path_length(l, W("+1,-3,+2,-0")) + 1e-9);
    for (const VertexVisit& v : g.visits) {
        CHECK(v.left >= std::numbers::pi - 1e-9);
        CHECK(v.right >= std::numbers::pi - 1e-9);
    }
}

TEST_CASE("tightening properties on random words") {
    std::mt19937 rng(7);
    for (const auto& surf : {make_torus(), make_lshape(), make_genus2(make_rational(1, 5))}) {
        const auto sc = saddle_connections(surf, 12.0);
        for (int trial = 0; trial < 40; ++trial) {
            const CurveWord w = random_word(surf, rng, 2 + trial % 6);
            FlatGeodesic g;
            try {
                g = tighten(surf, w);
            } catch (const ContractibleCurve&) {
                continue;
            }
            INFO("word " << w.to_string());
            CHECK(g.length > 0);
            CHECK(g.length <= midpoint_path_length(surf, w) + 1e-9);
            const double again = length(surf, g.word(surf.complex()));
            CHECK(again == doctest::Approx(g.length).epsilon(1e-12));
            for (const VertexVisit& v : g.visits) {
                CHECK(v.left >= std::numbers::pi - 1e-9);
                CHECK(v.right >= std::numbers::pi - 1e-9);
            }
            if (!g.cylinder) {
                // each straight piece between cone points is a saddle connection
                for (const GeodesicSegment& seg : g.segments) {
                    bool found = false;
                    for (const auto& c : sc) found |= std::abs(c.length() - seg.length) < 1e-9;
                    if (seg.length < 12.0) CHECK(found);
                }
            } else if (g.visits.empty()) {
                const Piece& p = g.pieces[0];
                const Vec2 mid = (p.a + p.b) * Rational(1, 2);
                if (mid != p.a && surf.complex().corner_at(p.tri, mid) < 0) {
                    const Trace tr = trace_ray(surf, {surf.complex().tri(p.tri).polygon, mid}, p.b - p.a, 1e3);
                    if (!tr.along_edge) {
                        CHECK(tr.end == TraceEnd::Periodic);
                        // the class may be a power of the primitive core
                        const double k = g.length / tr.length;
                        CHECK(k == doctest::Approx(std::round(k)));
                    }
                }
            }
        }
    }
}

namespace {

/// Word of the straight closed curve of the unit torus with primitive holonomy (p, q).
CurveWord torus_class(long p, long q) {
    const auto t = make_torus();
    const Trace tr = trace_ray(t, {0, Vec2(make_rational(1, 7), make_rational(2, 9))}, Vec2(p, q), 1e6);
    REQUIRE(tr.end == TraceEnd::Periodic);
    return CurveWord(tr.crossings);
}

std::pair<long, long> torus_holonomy(const HalfTranslationSurface& t, const CurveWord& w) {
    const Vec2 h = tighten(t, w).holonomy.t;
    long x = h.x.get_num().get_si(), y = h.y.get_num().get_si();
    if (y < 0 || (y == 0 && x < 0)) x = -x, y = -y;
    return {x, y};
}

std::pair<long, long> canon(long x, long y) {
    if (y < 0 || (y == 0 && x < 0)) return {-x, -y};
    return {x, y};
}

}  // namespace

TEST_CASE("torus intersection numbers are determinants") {
    const auto t = make_torus();
    CHECK(intersection_number(t, torus_class(1, 0), torus_class(0, 1)) == 1);
    CHECK(intersection_number(t, torus_class(1, 0), torus_class(1, 0)) == 0);
    CHECK(intersection_number(t, torus_class(2, 1), torus_class(1, 1)) == 1);
    CHECK(intersection_number(t, torus_class(3, 1), torus_class(1, 2)) == 5);
    CHECK(self_intersection(t, torus_class(2, 3)) == 0);
}

TEST_CASE("torus twists act by shear") {
    const auto t = make_torus();
    const CurveWord a = torus_class(0, 1), b = torus_class(1, 0);
    CHECK(torus_holonomy(t, dehn_twist(t, b, a, 1)) == std::make_pair(1L, 1L));
    CHECK(torus_holonomy(t, dehn_twist(t, b, a, 2)) == std::make_pair(1L, 2L));
    CHECK(torus_holonomy(t, dehn_twist(t, b, a, -1)) == std::make_pair(-1L, 1L));
    CHECK(twist_length_gap(t, a, b) == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(dehn_twist(t, b, b, 1), DisjointCurves);
    CHECK_THROWS_AS(twist_length_gap(t, b, b), DisjointCurves);
}

TEST_CASE("torus operations match lattice formulas on random classes") {
    const auto t = make_torus();
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> coord(-6, 6);
    auto primitive = [&] {
        for (;;) {
            const long x = coord(rng), y = coord(rng);
            if ((x != 0 || y != 0) && std::gcd(x, y) == 1) return std::make_pair(x, y);
        }
    };
    for (int trial = 0; trial < 60; ++trial) {
        const auto [p, q] = primitive();
        const auto [r, s] = primitive();
        const CurveWord a = torus_class(p, q), b = torus_class(r, s);
        CHECK(length(t, a) == doctest::Approx(std::hypot(p, q)).epsilon(1e-12));
        const long det = p * s - q * r;
        CHECK(intersection_number(t, a, b) == std::abs(det));
        CHECK(intersection_number(t, b, a) == std::abs(det));
        if (det != 0 && std::abs(det) <= 3) {
            // twist of (r, s) along (p, q): (r, s) + det((r, s), (p, q)) (p, q)
            const long c = r * q - s * p;
            CHECK(torus_holonomy(t, dehn_twist(t, b, a, 1)) == canon(r + c * p, s + c * q));
        }
    }
}

TEST_CASE("L-shape twist along a cylinder core is strictly shorter than the bound") {
    const auto l = make_lshape();
    const CurveWord alpha = W("+1,-3"), beta = W("+2,-0");
    CHECK(intersection_number(l, alpha, beta) == 1);
    CHECK(self_intersection(l, alpha) == 0);
    const double gap = twist_length_gap(l, alpha, beta);
    CHECK(gap > 1e-6);
    const double twisted = length(l, dehn_twist(l, beta, alpha, 1));
    CHECK(twisted < length(l, beta) + length(l, alpha) - 1e-6);
}

TEST_CASE("L-shape equality case through the cone point") {
    const auto l = make_lshape();
    const auto found = find_equality_case(l, 3.0);
    REQUIRE(found.has_value());
    CHECK(found->intersection >= 1);
    CHECK(found->gap >= -1e-9);
    CHECK(found->gap <= 1e-6);
    const FlatGeodesic a = tighten(l, found->alpha);
    CHECK_FALSE(a.cylinder);
    CHECK(self_intersection(l, a) == 0);
}
