#include "halfflat/corpus.hpp"

#include "halfflat/errors.hpp"

namespace halfflat {

namespace {

Polygon square(long x, long y) { return {{x, y}, {x + 1, y}, {x + 1, y + 1}, {x, y + 1}}; }

Gluing glue(int p, int e, int q, int f) { return {{p, e}, {q, f}, GluingMap::translation}; }

HalfTranslationSurface checked(HalfTranslationSurface s) {
    const ValidationReport r = validate(s);
    if (!r.ok) throw InternalError("corpus surface " + s.name() + " does not validate: " + r.diagnostics.front());
    return s;
}

}  // namespace

Rational inv_sqrt2() { return make_rational(22619537, 31988856); }

HalfTranslationSurface make_torus() {
    return checked({"torus", {square(0, 0)}, {glue(0, 0, 0, 2), glue(0, 1, 0, 3)}});
}

HalfTranslationSurface make_lshape() {
    return checked({"lshape",
                    {square(0, 0), square(1, 0), square(0, 1)},
                    {glue(0, 0, 2, 2), glue(0, 1, 1, 3), glue(0, 2, 2, 0), glue(0, 3, 1, 1), glue(1, 0, 1, 2),
                     glue(2, 1, 2, 3)}});
}

HalfTranslationSurface make_genus2(const Rational& s_in) {
    Rational s = s_in;
    s.canonicalize();
    const Rational r = inv_sqrt2();
    if (s <= 0 || s >= r)
        throw ConstraintFailure("genus2 parameter must satisfy 0 < a < " + format_rational(r));
    const Polygon box{{0, 0}, {r - s, 0}, {r, 0}, {r, r}, {r - s, r}, {0, r}};
    // A: bottom III|II, top II|I.  B: bottom I|IV, top IV|III.
    return checked({"genus2:a=" + format_rational(s),
                    {box, box},
                    {glue(0, 0, 1, 4), glue(0, 1, 0, 3), glue(0, 2, 0, 5), glue(0, 4, 1, 0), glue(1, 1, 1, 3),
                     glue(1, 2, 1, 5)}});
}

HalfTranslationSurface corpus(const std::string& spec) {
    if (spec == "torus") return make_torus();
    if (spec == "lshape") return make_lshape();
    const std::string prefix = "genus2:a=";
    if (spec.rfind(prefix, 0) == 0) {
        Rational s;
        try {
            s = parse_rational(spec.substr(prefix.size()));
        } catch (const ParseError& e) {
            throw ConstraintFailure(e.what());
        }
        return make_genus2(s);
    }
    throw UnknownCorpusEntry("'" + spec + "'");
}

}  // namespace halfflat
