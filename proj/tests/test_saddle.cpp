#include "doctest.h"

#include "halfflat/corpus.hpp"
#include "halfflat/errors.hpp"
#include "halfflat/saddle.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <set>

using namespace halfflat;

namespace {

using Hol = std::pair<long, long>;

Hol hol(const SaddleConnection& sc) { return {sc.holonomy.x.get_num().get_si(), sc.holonomy.y.get_num().get_si()}; }

/// Primitive lattice vectors up to sign with length at most L.
std::set<Hol> visible_lattice(double L) {
    std::set<Hol> out;
    const long R = static_cast<long>(std::floor(L));
    for (long x = -R; x <= R; ++x)
        for (long y = 0; y <= R; ++y) {
            if (y == 0 && x <= 0) continue;
            if (std::gcd(x, y) != 1) continue;
            if (static_cast<double>(x * x + y * y) <= L * L) out.insert({x, y});
        }
    return out;
}

std::set<Hol> holonomies(const std::vector<SaddleConnection>& list) {
    std::set<Hol> out;
    for (const auto& sc : list) out.insert(hol(sc));
    return out;
}

/// Connections of a square-tiled surface found by tracing every primitive integer direction from every polygon corner.
std::map<long, int> traced_counts(const HalfTranslationSurface& s, double L) {
    std::map<long, int> germs;  // squared length -> number of outgoing germs
    const long R = static_cast<long>(std::floor(L));
    for (int p = 0; p < static_cast<int>(s.polygons().size()); ++p)
        for (const Vec2& v : s.polygons()[p])
            for (long x = -R; x <= R; ++x)
                for (long y = -R; y <= R; ++y) {
                    if (std::gcd(x, y) != 1) continue;
                    try {
                        const auto tr = trace_ray(s, {p, v}, Vec2(x, y), L + 1e-9, {false});
                        if (tr.end == TraceEnd::ConePointHit) germs[std::lround(tr.length * tr.length)]++;
                    } catch (const AmbiguousStart&) {
                    }
                }
    for (auto& [len2, n] : germs) n /= 2;
    return germs;
}

}  // namespace

TEST_CASE("torus saddle connections") {
    const auto t = make_torus();
    const auto sc = saddle_connections(t, 1.5);
    CHECK(sc.size() == 4);
    CHECK(holonomies(sc) == std::set<Hol>{{1, 0}, {0, 1}, {1, 1}, {-1, 1}});
    CHECK(saddle_connections(t, 0.5).empty());
    CHECK(holonomies(saddle_connections(t, 5)) == visible_lattice(5));
    CHECK(saddle_connections(t, 5).size() == visible_lattice(5).size());
}

TEST_CASE("L-shape unit connections") {
    const auto l = make_lshape();
    const auto sc = saddle_connections(l, 1);
    CHECK(sc.size() == 6);
    int horizontal = 0, vertical = 0;
    for (const auto& c : sc) {
        CHECK(c.src == 0);
        CHECK(c.dst == 0);
        CHECK(c.len2 == 1);
        horizontal += c.holonomy == Vec2(1, 0);
        vertical += c.holonomy == Vec2(0, 1);
    }
    CHECK(horizontal == 3);
    CHECK(vertical == 3);
}

TEST_CASE("L-shape counts agree with exhaustive tracing") {
    const auto l = make_lshape();
    for (double L : {1.0, 2.3, 3.2}) {
        std::map<long, int> counts;
        for (const auto& c : saddle_connections(l, L)) counts[c.len2.get_num().get_si()]++;
        CHECK(counts == traced_counts(l, L));
    }
}

TEST_CASE("ordering, monotonicity and replay") {
    for (const auto& s : {make_lshape(), make_genus2(make_rational(1, 4))}) {
        const auto small = saddle_connections(s, 1.2);
        const auto big = saddle_connections(s, 2.4);
        for (std::size_t i = 1; i < big.size(); ++i) CHECK(big[i - 1].len2 <= big[i].len2);
        std::set<std::tuple<Corner, std::string, std::string>> keys;
        for (const auto& c : big) keys.insert({c.src_corner, c.local.x.get_str(), c.local.y.get_str()});
        for (const auto& c : small) CHECK(keys.count({c.src_corner, c.local.x.get_str(), c.local.y.get_str()}) == 1);
        const Complex& cx = s.complex();
        for (const auto& c : big) {
            CHECK(c.len2 == c.holonomy.norm2() * s.scale2());
            const Triangle& T = cx.tri(c.src_corner.tri);
            const auto tr = trace_ray(s, {T.polygon, T.p[c.src_corner.k]}, c.local, 10, {false});
            CHECK(tr.end == TraceEnd::ConePointHit);
            CHECK(tr.vertex == c.dst);
            CHECK(std::abs(tr.length - c.length()) < 1e-12);
            const auto path = saddle_path(cx, c.src_corner, c.local);
            CHECK(cx.vertex_of(path.end) == c.dst);
        }
    }
}

TEST_CASE("saddle connections are equivariant under diag(2, 1/2)") {
    const auto t = make_torus();
    const auto A = LinearDeformation::diagonal(2);
    const double L = 3;
    std::set<Hol> mapped;
    for (const auto& c : saddle_connections(t, 2 * L)) {
        const Vec2 w = canonical_direction(A.apply(c.holonomy));
        if (w.norm2() <= L * L) mapped.insert({w.x.get_num().get_si() * 2 / w.x.get_den().get_si(), w.y.get_num().get_si() * 2 / w.y.get_den().get_si()});
    }
    std::set<Hol> direct;
    for (const auto& c : saddle_connections(apply_linear(t, A), L)) {
        const Vec2 w = c.holonomy * 2;
        direct.insert({w.x.get_num().get_si(), w.y.get_num().get_si()});
    }
    CHECK(mapped == direct);
    CHECK(!direct.empty());
}

TEST_CASE("work budget") {
    SaddleOptions opt;
    opt.budget = 10;
    CHECK_THROWS_AS(saddle_connections(make_lshape(), 6, opt), CapTooLarge);
}

TEST_CASE("normalized lengths are exact") {
    const auto n = normalize_area(make_lshape());
    const auto sc = saddle_connections(n, 0.6);
    REQUIRE(sc.size() == 6);
    CHECK(sc[0].len2 == make_rational(1, 3));
    CHECK(saddle_csv(sc).rfind("len2_num,len2_den,dx,dy,src,dst\n1,3,", 0) == 0);
}
