#include "halfflat/kdistance.hpp"

#include "halfflat/complex.hpp"
#include "halfflat/corpus.hpp"
#include "halfflat/cylinders.hpp"
#include "halfflat/errors.hpp"
#include "halfflat/parallel.hpp"
#include "halfflat/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace halfflat {

namespace {

double systole(const HalfTranslationSurface& q) {
    double bound = default_cap(q) / 100;
    for (;;) {
        const auto sc = saddle_connections(q, bound);
        if (!sc.empty()) {
            double best = sc[0].length();
            for (const auto& c : sc) best = std::min(best, c.length());
            return best;
        }
        bound *= 2;
    }
}

CurveWord loop_word(const HalfTranslationSurface& q, const std::vector<std::pair<Corner, Vec2>>& scs) {
    const Complex& cx = q.complex();
    return crossing_word(cx, reduce(cx, saddle_loop(cx, scs))).reduced();
}

}  // namespace

std::string to_string(BoundStatus s) { return s == BoundStatus::exact ? "exact" : "lower-bound"; }

MarkedPair make_marked_pair(const HalfTranslationSurface& q1, const HalfTranslationSurface& q2) {
    if (!q1.same_combinatorics(q2)) throw MarkingMismatch("surfaces have different polygon or gluing data");
    return {normalize_area(q1), normalize_area(q2), std::nullopt, {}};
}

MarkedPair make_linear_pair(const HalfTranslationSurface& q, const LinearDeformation& A) {
    if (std::abs(A.determinant().get_d() - 1) > 1e-12) throw InvalidSurface("linear deformation must have determinant 1");
    MarkedPair p = make_marked_pair(q, apply_linear(q, A));
    p.deformation = A;
    return p;
}

MarkedPair make_genus2_pair(const Rational& a, const Rational& b) {
    const auto qa = make_genus2(a), qb = make_genus2(b);
    for (const auto& [q, s] : {std::pair{qa, a}, std::pair{qb, b}}) {
        const Genus2Certificate c = certify_genus2(q, s);
        if (!c.ok) {
            std::string msg = "genus2:a=" + format_rational(s) + " failed certification:";
            for (const auto& f : c.failures) msg += " " + f + ";";
            throw ConstraintFailure(msg);
        }
    }
    MarkedPair p = make_marked_pair(qa, qb);
    p.named = {genus2_II_IVinv(p.q1, a), genus2_I_IIIinv(p.q1, a)};
    return p;
}

MarkedPair parse_pair(const std::string& spec) {
    const std::string prefix = "genus2:";
    if (spec.rfind(prefix, 0) != 0) throw UnknownCorpusEntry("pair '" + spec + "'");
    std::map<std::string, Rational> values;
    std::size_t pos = prefix.size();
    while (pos < spec.size()) {
        std::size_t end = spec.find(',', pos);
        if (end == std::string::npos) end = spec.size();
        const std::string item = spec.substr(pos, end - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw ConstraintFailure("expected key=value in '" + item + "'");
        try {
            values[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
        } catch (const ParseError& e) {
            throw ConstraintFailure(e.what());
        }
        pos = end + 1;
    }
    if (values.size() != 2 || !values.count("a") || !values.count("b"))
        throw ConstraintFailure("pair needs exactly a=... and b=...");
    return make_genus2_pair(values["a"], values["b"]);
}

std::vector<CurveWord> candidate_pool(const MarkedPair& pair, double L, const std::vector<CurveWord>& extra) {
    std::vector<CurveWord> out;
    std::set<CurveWord> seen;
    auto add = [&](const CurveWord& w) {
        if (seen.insert(w.unoriented()).second) out.push_back(w);
    };
    for (const auto& c : cylinder_curves_up_to(pair.q1, L)) add(c.word);
    for (const auto& c : cylinder_curves_up_to(pair.q2, L)) add(c.word);
    for (const auto& w : pair.named) add(w);
    for (const auto& w : extra) {
        if (self_intersection(pair.q1, w) != 0) throw NotSimple("candidate " + w.to_string() + " is not simple");
        add(w);
    }
    return out;
}

DistanceReport evaluate_pool(const HalfTranslationSurface& q1, const HalfTranslationSurface& q2,
                             const std::vector<CurveWord>& pool) {
    if (pool.empty()) throw EmptyCandidates("no candidate curves within the length bound");
    std::vector<CandidateRow> rows(pool.size());
    parallel_for(pool.size(), [&](std::size_t i) {
        rows[i].word = pool[i];
        rows[i].length1 = length(q1, pool[i]);
        rows[i].length2 = length(q2, pool[i]);
        rows[i].ratio = rows[i].length2 / rows[i].length1;
    });
    std::sort(rows.begin(), rows.end(), [](const CandidateRow& a, const CandidateRow& b) {
        if (std::abs(a.ratio - b.ratio) > 1e-12) return a.ratio > b.ratio;
        return a.word.unoriented() < b.word.unoriented();
    });
    DistanceReport rep;
    rep.r = rows[0].ratio;
    rep.K = std::log(rep.r);
    rep.witness = rows[0].word;
    rep.witness_ratio = rep.r;
    rep.candidates = rows.size();
    rep.table = std::move(rows);
    return rep;
}

DistanceReport ratio_lower_bound(const MarkedPair& pair, double L, const std::vector<CurveWord>& extra) {
    return evaluate_pool(pair.q1, pair.q2, candidate_pool(pair, L, extra));
}

DistanceReport k_exact_linear(const HalfTranslationSurface& q, const LinearDeformation& A, double L) {
    const ValidationReport v = validate(q);
    if (!v.ok) throw InvalidSurface("surface does not validate");
    const MarkedPair pair = make_linear_pair(q, A);
    if (L <= 0) L = 3 * systole(pair.q1);
    std::vector<CurveWord> pool;
    for (const auto& c : cylinder_curves_up_to(pair.q1, L)) pool.push_back(c.word);
    DistanceReport rep = evaluate_pool(pair.q1, pair.q2, pool);
    rep.witness_ratio = rep.r;
    rep.r = A.sigma_max();
    rep.K = std::log(rep.r);
    rep.status = BoundStatus::exact;
    return rep;
}

AsymmetryReport asymmetry_report(const MarkedPair& pair, double L, const std::vector<CurveWord>& extra) {
    const auto pool = candidate_pool(pair, L, extra);
    return {evaluate_pool(pair.q1, pair.q2, pool), evaluate_pool(pair.q2, pair.q1, pool)};
}

std::optional<CurveWord> find_longer_curve(const MarkedPair& pair, double L) {
    std::vector<CurveWord> pool;
    try {
        pool = candidate_pool(pair, L);
    } catch (const EmptyCandidates&) {
        return std::nullopt;
    }
    if (pool.empty()) return std::nullopt;
    const DistanceReport rep = evaluate_pool(pair.q1, pair.q2, pool);
    const CandidateRow& top = rep.table[0];
    if (top.length2 > top.length1 + 1e-9) return top.word;
    return std::nullopt;
}

CurveWord genus2_II_IVinv(const HalfTranslationSurface& surface, const Rational& s) {
    const Complex& cx = surface.complex();
    return loop_word(surface, {corner_for(cx, 0, 1, Vec2(s, 0)), corner_for(cx, 1, 2, Vec2(-s, 0))});
}

CurveWord genus2_I_IIIinv(const HalfTranslationSurface& surface, const Rational& s) {
    const Complex& cx = surface.complex();
    const Rational w = inv_sqrt2() - s;
    return loop_word(surface, {corner_for(cx, 1, 0, Vec2(w, 0)), corner_for(cx, 0, 1, Vec2(-w, 0))});
}

Genus2Certificate certify_genus2(const HalfTranslationSurface& surface, const Rational& s) {
    Genus2Certificate c;
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) c.failures.push_back(what);
    };
    const ValidationReport v = validate(surface);
    check(v.ok, "validation");
    check(v.genus == 2, "genus is " + std::to_string(v.genus));
    check(std::abs(area(surface).get_d() - 1) < 1e-9, "area is not 1");
    if (!v.ok) return c;
    const double r = inv_sqrt2().get_d(), sd = s.get_d(), unit = surface.scale();
    const std::pair<CurveWord (*)(const HalfTranslationSurface&, const Rational&), double> named[] = {
        {genus2_II_IVinv, 2 * sd}, {genus2_I_IIIinv, 2 * (r - sd)}};
    const char* names[] = {"II*IV^-1", "I*III^-1"};
    for (int i = 0; i < 2; ++i) {
        try {
            const CurveWord w = named[i].first(surface, s);
            const FlatGeodesic g = tighten(surface, w);
            check(std::abs(g.length - named[i].second * unit) < 1e-9, std::string(names[i]) + " has the wrong length");
            check(self_intersection(surface, g) == 0, std::string(names[i]) + " is not simple");
        } catch (const Error& e) {
            check(false, std::string(names[i]) + ": " + e.what());
        }
    }
    c.ok = c.failures.empty();
    return c;
}

}  // namespace halfflat
