#include "halfflat/geometry.hpp"

#include "halfflat/errors.hpp"

#include <cmath>
#include <numbers>

namespace halfflat {

Vec2 canonical_direction(const Vec2& w) {
    if (w.y < 0 || (w.y == 0 && w.x < 0)) return -w;
    return w;
}

Direction::Direction(const Vec2& w) : v(canonical_direction(w)) {
    if (w.x == 0 && w.y == 0) throw InvalidSurface("zero direction");
}

double Direction::angle() const {
    double a = std::atan2(v.dy(), v.dx());
    if (a >= std::numbers::pi) a -= std::numbers::pi;
    return a < 0 ? 0 : a;
}

bool Direction::operator<(const Direction& o) const { return sign(cross(v, o.v)) > 0; }

// ---------------------------------------------------------------------------

RayStep step_ray(const Complex& cx, const RayState& s) {
    const Triangle& T = cx.tri(s.tri);
    RayStep out;
    out.tri = s.tri;
    out.from = s.x;
    int best = -1;
    Rational best_t;
    for (int k = 0; k < 3; ++k) {
        const Vec2 e = T.p[(k + 1) % 3] - T.p[k];
        const Rational c = cross(e, s.d);
        if (c == 0 && cross(e, s.x - T.p[k]) == 0) out.along_edge = true;
        if (c >= 0) continue;
        const Rational t = cross(e, s.x - T.p[k]) / (-c);
        if (best < 0 || t < best_t) {
            best = k;
            best_t = t;
        }
    }
    if (best < 0 || best_t <= 0) throw InternalError("ray is not inside its triangle");
    out.dt = best_t;
    out.to = s.x + s.d * best_t;
    for (int k = 0; k < 3; ++k)
        if (out.to == T.p[k]) {
            out.vertex_k = k;
            return out;
        }
    out.exit_edge = best;
    return out;
}

RayState cross_edge(const Complex& cx, const RayStep& step, const Vec2& d) {
    const TriLink& l = cx.tri(step.tri).nb[step.exit_edge];
    const Isometry inv = l.iso.inverse();
    return {l.tri, inv.apply(step.to), inv.apply_linear(d)};
}

int locate_in_polygon(const Complex& cx, int polygon, const Vec2& x, const Vec2& d) {
    for (int t : cx.polygon_triangles().at(polygon)) {
        const Triangle& T = cx.tri(t);
        const int k = cx.corner_at(t, x);
        if (k >= 0) {
            if (cx.in_corner({t, k}, d)) return t;
            continue;
        }
        bool ok = true;
        for (int j = 0; j < 3 && ok; ++j) {
            const Vec2 e = T.p[(j + 1) % 3] - T.p[j];
            const int side = sign(cross(e, x - T.p[j]));
            if (side < 0) ok = false;
            if (side == 0) {
                const int c = sign(cross(e, d));
                ok = c > 0 || (c == 0 && sign(dot(e, d)) > 0);
            }
        }
        if (ok) return t;
    }
    return -1;
}

Vec2 to_ccw_frame(const Complex& cx, Corner c, const Vec2& v) {
    return cx.tri(c.tri).nb[(c.k + 2) % 3].iso.inverse().apply_linear(v);
}

std::pair<Corner, Vec2> corner_containing(const Complex& cx, Corner c, Vec2 d) {
    const std::size_t n = cx.vertices()[cx.vertex_of(c)].corners.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (cx.in_corner(c, d)) return {c, d};
        d = to_ccw_frame(cx, c, d);
        c = cx.ccw_next(c);
    }
    throw InternalError("direction lies in no corner");
}

// ---------------------------------------------------------------------------

namespace {

RayState initial_state(const HalfTranslationSurface& surface, const Complex& cx, const SurfacePoint& start,
                       const Vec2& d) {
    if (start.polygon < 0 || start.polygon >= static_cast<int>(surface.polygons().size()))
        throw AmbiguousStart("no polygon " + std::to_string(start.polygon));
    int t = locate_in_polygon(cx, start.polygon, start.p, d);
    if (t >= 0) return {t, start.p, d};
    const Polygon& poly = surface.polygons()[start.polygon];
    for (const Vec2& v : poly)
        if (v == start.p) throw AmbiguousStart("direction does not enter the polygon corner at the start vertex");
    // on a glued polygon edge with the ray leaving the polygon: start on the other side
    for (int tri : cx.polygon_triangles()[start.polygon]) {
        const Triangle& T = cx.tri(tri);
        for (int k = 0; k < 3; ++k) {
            if (T.nb[k].gluing < 0) continue;
            const Vec2& a = T.p[k];
            const Vec2& b = T.p[(k + 1) % 3];
            if (orient(a, b, start.p) != 0 || dot(start.p - a, start.p - b) > 0) continue;
            const Isometry inv = T.nb[k].iso.inverse();
            const Vec2 x2 = inv.apply(start.p), d2 = inv.apply_linear(d);
            t = locate_in_polygon(cx, cx.tri(T.nb[k].tri).polygon, x2, d2);
            if (t >= 0) return {t, x2, d2};
        }
    }
    throw AmbiguousStart("start point is not in polygon " + std::to_string(start.polygon));
}

}  // namespace

Trace trace_ray(const HalfTranslationSurface& surface, const SurfacePoint& start, const Vec2& dir, double cap,
                const TraceOptions& options) {
    const Complex& cx = surface.complex();
    if (dir.x == 0 && dir.y == 0) throw AmbiguousStart("zero direction");
    const RayState s0 = initial_state(surface, cx, start, dir);
    RayState s = s0;
    const double unit = dir.norm() * cx.scale();
    Trace out;
    Rational travelled = 0;
    int last_polygon = -1;

    auto add_segment = [&](int tri, const Vec2& a, const Vec2& b, bool glued_before) {
        const int polygon = cx.tri(tri).polygon;
        const double len = std::sqrt((b - a).norm2().get_d()) * cx.scale();
        if (!glued_before && polygon == last_polygon && !out.segments.empty()) {
            out.segments.back().exit = b;
            out.segments.back().length += len;
        } else {
            out.segments.push_back({polygon, a, b, len, out.crossings.size()});
        }
        last_polygon = polygon;
    };

    bool glued = true;
    for (;;) {
        const RayStep step = step_ray(cx, s);
        out.along_edge |= step.along_edge;

        if (s.tri == s0.tri && s.d == s0.d && orient(step.from, step.to, s0.x) == 0 &&
            dot(s0.x - step.from, s.d) >= 0 && dot(step.to - s0.x, s.d) >= 0) {
            const Rational offset = dot(s0.x - step.from, s.d) / s.d.norm2();
            if (travelled + offset > 0) {
                add_segment(s.tri, step.from, s0.x, glued);
                out.end = TraceEnd::Periodic;
                out.length = Rational(travelled + offset).get_d() * unit;
                return out;
            }
        }
        if (Rational(travelled + step.dt).get_d() * unit > cap) {
            const Rational rest = rational_from_double(cap / unit) - travelled;
            const Vec2 stop = step.from + s.d * (rest > 0 ? rest : Rational(0));
            add_segment(s.tri, step.from, stop, glued);
            out.end = TraceEnd::LengthCap;
            out.length = cap;
            return out;
        }
        add_segment(s.tri, step.from, step.to, glued);
        glued = false;
        travelled += step.dt;

        if (step.vertex_k >= 0) {
            const Corner in{s.tri, step.vertex_k};
            const int vc = cx.vertex_of(in);
            if (!(options.continue_through_marked && cx.vertices()[vc].multiple == 2)) {
                out.end = TraceEnd::ConePointHit;
                out.vertex = vc;
                out.length = travelled.get_d() * unit;
                return out;
            }
            Corner c = in;
            Vec2 d = s.d;
            while (!cx.in_corner(c, d)) {
                const TriLink& l = cx.tri(c.tri).nb[(c.k + 2) % 3];
                if (l.gluing >= 0) {
                    out.crossings.push_back({l.gluing, l.sign});
                    glued = true;
                }
                d = to_ccw_frame(cx, c, d);
                c = cx.ccw_next(c);
                if (c == in) throw InternalError("no outgoing corner at a marked point");
            }
            s = {c.tri, cx.tri(c.tri).p[c.k], d};
            continue;
        }
        const TriLink& l = cx.tri(s.tri).nb[step.exit_edge];
        if (l.gluing >= 0) {
            out.crossings.push_back({l.gluing, l.sign});
            glued = true;
        }
        s = cross_edge(cx, step, s.d);
    }
}

Sleeve develop(const HalfTranslationSurface& surface, const CurveWord& word) {
    word.check_coherent(surface);
    Sleeve sl;
    if (word.empty()) throw IncoherentWord("empty word");
    Isometry iso;
    sl.placed.push_back({exit_polygon(surface, word.steps()[0]), iso});
    for (const Crossing& c : word.steps()) {
        const Isometry g = surface.gluing_map(c.gluing);
        iso = iso * (c.sign > 0 ? g : g.inverse());
        sl.placed.push_back({entry_polygon(surface, c), iso});
    }
    sl.holonomy = iso;
    return sl;
}

}  // namespace halfflat
