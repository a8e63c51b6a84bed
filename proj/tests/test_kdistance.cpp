#include "doctest.h"

#include "halfflat/corpus.hpp"
#include "halfflat/errors.hpp"
#include "halfflat/kdistance.hpp"

#include <cmath>
#include <random>

using namespace halfflat;

namespace {

CurveWord W(const char* s) { return CurveWord::parse(s); }

double r_inv() { return 1 / std::sqrt(2.0); }

/// Random SL2 matrix with small rational entries: upper then lower shear, then a diagonal.
LinearDeformation random_sl2(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3), lam(1, 4);
    const Rational u = make_rational(num(rng), den(rng)), v = make_rational(num(rng), den(rng));
    const Rational l = make_rational(lam(rng), lam(rng));
    // [[l, 0], [0, 1/l]] [[1, 0], [v, 1]] [[1, u], [0, 1]]
    return {l, l * u, v / l, (v * u + 1) / l};
}

}  // namespace

TEST_CASE("identical metrics are at distance zero") {
    const auto l = make_lshape();
    const MarkedPair p = make_marked_pair(l, l);
    const DistanceReport rep = ratio_lower_bound(p, 2.0);
    CHECK(rep.r == doctest::Approx(1).epsilon(1e-12));
    CHECK(std::abs(rep.K) < 1e-12);
    CHECK(rep.status == BoundStatus::lower_bound);
    CHECK_FALSE(find_longer_curve(p, 2.0).has_value());
    const AsymmetryReport a = asymmetry_report(p, 2.0);
    CHECK(std::abs(a.forward.K) < 1e-12);
    CHECK(std::abs(a.backward.K) < 1e-12);
}

TEST_CASE("torus under a diagonal deformation") {
    const auto t = make_torus();
    const MarkedPair p = make_linear_pair(t, LinearDeformation::diagonal(2));
    const DistanceReport rep = ratio_lower_bound(p, 1.5);
    CHECK(rep.r == doctest::Approx(2).epsilon(1e-12));
    CHECK(rep.K == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(rep.table[0].length1 == doctest::Approx(1));
    CHECK(rep.table[0].length2 == doctest::Approx(2));
    CHECK(rep.witness.unoriented() == W("+1").unoriented());
    const auto longer = find_longer_curve(p, 1.5);
    REQUIRE(longer.has_value());
    CHECK(longer->unoriented() == W("+1").unoriented());
    const DistanceReport ex = k_exact_linear(t, LinearDeformation::diagonal(2));
    CHECK(ex.status == BoundStatus::exact);
    CHECK(ex.K == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(ex.witness_ratio == doctest::Approx(2).epsilon(1e-12));
}

TEST_CASE("exact linear values") {
    const auto l = normalize_area(make_lshape());
    CHECK(std::abs(k_exact_linear(l, LinearDeformation::identity()).K) < 1e-15);
    CHECK(k_exact_linear(l, LinearDeformation::diagonal(2)).K == doctest::Approx(std::log(2.0)));
    CHECK(std::abs(k_exact_linear(l, LinearDeformation::rotation(0.7)).K) < 1e-9);
    CHECK_THROWS_AS(k_exact_linear(l, LinearDeformation(2, 0, 0, 1)), InvalidSurface);
}

TEST_CASE("lower bound never exceeds the exact linear value") {
    std::mt19937 rng(5);
    const HalfTranslationSurface surfaces[] = {make_torus(), make_lshape()};
    for (int trial = 0; trial < 12; ++trial) {
        const auto& q = surfaces[trial % 2];
        const LinearDeformation A = random_sl2(rng);
        const double exact = std::log(A.sigma_max());
        const MarkedPair p = make_linear_pair(q, A);
        const DistanceReport lo = ratio_lower_bound(p, 2.5);
        INFO("trial " << trial);
        CHECK(lo.K <= exact + 1e-9);
        CHECK(lo.K >= -1e-12);
        CHECK(lo.r == doctest::Approx(lo.table[0].ratio));
        for (const CandidateRow& row : lo.table) CHECK(row.ratio <= lo.r + 1e-15);
    }
}

TEST_CASE("lower bound is monotone in the length bound and the pool") {
    const MarkedPair p = make_linear_pair(make_lshape(), LinearDeformation(1, make_rational(1, 2), 0, 1));
    double prev = 0;
    for (double L : {1.0, 1.5, 2.0, 3.0}) {
        double r = 0;
        try {
            r = ratio_lower_bound(p, L).r;
        } catch (const EmptyCandidates&) {
            continue;
        }
        CHECK(r >= prev - 1e-15);
        prev = r;
    }
    const DistanceReport base = ratio_lower_bound(p, 2.0);
    const DistanceReport more = ratio_lower_bound(p, 2.0, {W("+1,-3,+2,-0")});
    CHECK(more.r >= base.r - 1e-15);
    CHECK(more.candidates >= base.candidates);
}

TEST_CASE("triangle inequality on a shared pool") {
    std::mt19937 rng(17);
    const auto q = normalize_area(make_lshape());
    for (int trial = 0; trial < 6; ++trial) {
        const auto q2 = normalize_area(apply_linear(q, random_sl2(rng)));
        const auto q3 = normalize_area(apply_linear(q, random_sl2(rng)));
        std::vector<CurveWord> pool;
        for (const auto& pp : {make_marked_pair(q, q2), make_marked_pair(q2, q3), make_marked_pair(q, q3)})
            for (const CurveWord& w : candidate_pool(pp, 2.0)) pool.push_back(w);
        const double k13 = evaluate_pool(q, q3, pool).K;
        const double k12 = evaluate_pool(q, q2, pool).K;
        const double k23 = evaluate_pool(q2, q3, pool).K;
        CHECK(k13 <= k12 + k23 + 1e-12);
    }
}

TEST_CASE("area normalization rescales every ratio by the same factor") {
    const auto l = make_lshape();
    const auto sheared = apply_linear(l, LinearDeformation(1, make_rational(1, 3), 0, 1));
    std::vector<Polygon> doubled = sheared.polygons();
    for (Polygon& P : doubled)
        for (Vec2& v : P) v = v * Rational(2);
    const HalfTranslationSurface big("big", doubled, sheared.gluings());
    const MarkedPair p = make_marked_pair(l, big);
    const auto pool = candidate_pool(p, 2.0);
    const DistanceReport raw = evaluate_pool(l, big, pool);
    const DistanceReport norm = evaluate_pool(p.q1, p.q2, pool);
    const double factor = std::sqrt(area(l).get_d() / area(big).get_d());
    CHECK(factor == doctest::Approx(0.5));
    REQUIRE(raw.table.size() == norm.table.size());
    for (std::size_t i = 0; i < raw.table.size(); ++i) {
        CHECK(norm.table[i].ratio == doctest::Approx(raw.table[i].ratio * factor).epsilon(1e-12));
        CHECK(norm.table[i].word == raw.table[i].word);
    }
    CHECK(raw.witness == norm.witness);
}

TEST_CASE("genus-2 family named curves and asymmetry") {
    const Rational a = make_rational(1, 4), b = make_rational(1, 3);
    for (const Rational& s : {a, b, make_rational(1, 10), make_rational(3, 5)}) {
        const Genus2Certificate c = certify_genus2(make_genus2(s), s);
        CHECK(c.ok);
    }
    const MarkedPair p = make_genus2_pair(a, b);
    REQUIRE(p.named.size() == 2);
    CHECK(length(p.q1, p.named[0]) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(length(p.q2, p.named[0]) == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(length(p.q1, p.named[1]) == doctest::Approx(2 * (r_inv() - 0.25)).epsilon(1e-12));
    CHECK(length(p.q2, p.named[1]) == doctest::Approx(2 * (r_inv() - 1.0 / 3)).epsilon(1e-12));

    const AsymmetryReport rep = asymmetry_report(p, 2.0);
    CHECK(std::abs(rep.forward.r - 4.0 / 3) < 1e-9);
    CHECK(rep.forward.witness.unoriented() == p.named[0].unoriented());
    CHECK(std::abs(rep.backward.r - (r_inv() - 0.25) / (r_inv() - 1.0 / 3)) < 1e-9);
    CHECK(rep.backward.witness.unoriented() == p.named[1].unoriented());
    CHECK(rep.forward.candidates == rep.backward.candidates);

    const auto longer = find_longer_curve(p, 2.0);
    REQUIRE(longer.has_value());
    CHECK(longer->unoriented() == p.named[0].unoriented());
    CHECK(parse_pair("genus2:a=1/4,b=1/3").named[0] == p.named[0]);
}

TEST_CASE("k_distance errors") {
    CHECK_THROWS_AS(make_marked_pair(make_torus(), make_lshape()), MarkingMismatch);
    const MarkedPair p = make_marked_pair(make_lshape(), make_lshape());
    CHECK_THROWS_AS(ratio_lower_bound(p, 0.1), EmptyCandidates);
    CHECK_FALSE(find_longer_curve(p, 0.1).has_value());
    CHECK_THROWS_AS(make_genus2_pair(make_rational(1, 4), Rational(1)), ConstraintFailure);
    CHECK_THROWS_AS(parse_pair("genus2:a=1/4"), ConstraintFailure);
    CHECK_THROWS_AS(parse_pair("torus"), UnknownCorpusEntry);

    // a non-simple extra is rejected
    std::mt19937 rng(3);
    const auto& l = p.q1;
    std::uniform_int_distribution<int> g(0, static_cast<int>(l.gluings().size()) - 1);
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<Crossing> cs;
        int poly = 0;
        for (int k = 0; k < 8 || poly != 0; ++k) {
            const int gi = g(rng);
            const Gluing& gl = l.gluings()[gi];
            if (gl.from.polygon == poly) cs.push_back({gi, +1});
            else if (gl.to.polygon == poly) cs.push_back({gi, -1});
            else continue;
            poly = entry_polygon(l, cs.back());
            if (k > 40) break;
        }
        if (poly != 0) continue;
        const CurveWord w = CurveWord(cs).reduced();
        int si = 0;
        try {
            si = self_intersection(l, w);
        } catch (const ContractibleCurve&) {
            continue;
        }
        if (si > 0) {
            CHECK_THROWS_AS(ratio_lower_bound(p, 1.0, {w}), NotSimple);
            return;
        }
    }
    FAIL("no non-simple word found");
}
