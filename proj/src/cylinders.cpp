#include "halfflat/cylinders.hpp"

#include "halfflat/errors.hpp"
#include "halfflat/curves.hpp"
#include "halfflat/parallel.hpp"
#include "halfflat/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

namespace halfflat {

namespace {

struct Seg {
    Vec2 a, b;
};

Vec2 rot90(const Vec2& v) { return {-v.y, v.x}; }

/// Moves a ray starting on an edge of `tri` into the triangle it enters.
RayState enter(const Complex& cx, int tri, const Vec2& x, const Vec2& d) {
    const Triangle& T = cx.tri(tri);
    for (int e = 0; e < 3; ++e) {
        const Vec2 ev = T.p[(e + 1) % 3] - T.p[e];
        if (orient(T.p[e], T.p[(e + 1) % 3], x) == 0 && sign(cross(ev, d)) < 0) {
            const Isometry inv = T.nb[e].iso.inverse();
            return {T.nb[e].tri, inv.apply(x), inv.apply_linear(d)};
        }
    }
    return {tri, x, d};
}

}  // namespace

double default_cap(const HalfTranslationSurface& surface) {
    double sum = 0;
    for (const Polygon& P : surface.polygons()) {
        double diam = 0;
        for (const Vec2& a : P)
            for (const Vec2& b : P) diam = std::max(diam, (b - a).norm());
        sum += diam;
    }
    return 100 * sum * surface.scale();
}

Decomposition cylinder_decomposition(const HalfTranslationSurface& surface, const Direction& dir, double cap) {
    const Complex& cx = surface.complex();
    Decomposition out;
    out.direction = dir;

    // separatrices, each saddle connection kept once
    std::map<int, std::vector<Seg>> pieces;
    struct Traced {
        Corner start;
        Vec2 u;
        int tri;
        Vec2 from, to;  // first piece
    };
    std::vector<Traced> traced;
    std::map<std::pair<Germ, Germ>, int> seen;
    for (int v = 0; v < static_cast<int>(cx.vertices().size()); ++v) {
        for (const Corner& c : cx.vertices()[v].corners) {
            for (const Vec2& u : {dir.v, -dir.v}) {
                if (!cx.in_corner(c, u)) continue;
                RayState s{c.tri, cx.tri(c.tri).p[c.k], u};
                std::vector<std::pair<int, Seg>> here;
                Rational travelled = 0;
                const double unit = u.norm() * cx.scale();
                Corner end;
                for (;;) {
                    const RayStep st = step_ray(cx, s);
                    travelled += st.dt;
                    if (travelled.get_d() * unit > cap)
                        throw NotPeriodic("a separatrix in direction (" + format_rational(dir.v.x) + ", " +
                                          format_rational(dir.v.y) + ") is longer than the cap");
                    here.push_back({s.tri, {st.from, st.to}});
                    if (st.vertex_k >= 0) {
                        end = {s.tri, st.vertex_k};
                        break;
                    }
                    s = cross_edge(cx, st, s.d);
                }
                const Germ g0 = make_germ(cx, c, u), g1 = make_germ(cx, end, -s.d);
                const auto key = g0 < g1 ? std::make_pair(g0, g1) : std::make_pair(g1, g0);
                if (seen.count(key)) continue;
                seen[key] = static_cast<int>(traced.size());
                traced.push_back({c, u, here[0].first, here[0].second.a, here[0].second.b});
                out.connections.push_back({c, u, travelled.get_d() * unit});
                for (const auto& [t, sg] : here) {
                    pieces[t].push_back(sg);
                    const Triangle& T = cx.tri(t);
                    for (int e = 0; e < 3; ++e)
                        if (orient(T.p[e], T.p[(e + 1) % 3], sg.a) == 0 && orient(T.p[e], T.p[(e + 1) % 3], sg.b) == 0) {
                            const Isometry inv = T.nb[e].iso.inverse();
                            pieces[T.nb[e].tri].push_back({inv.apply(sg.a), inv.apply(sg.b)});
                        }
                }
            }
        }
    }

    std::map<CurveWord, int> index;
    for (int k = 0; k < static_cast<int>(traced.size()); ++k) {
        for (int side : {+1, -1}) {
            const Traced& sc = traced[k];
            const Vec2 P = (sc.from + sc.to) * Rational(1, 2);
            const Vec2 n0 = side > 0 ? rot90(sc.u) : -rot90(sc.u);
            RayState s = enter(cx, sc.tri, P, n0);
            const RayState s0 = s;
            const Vec2 u = s.d == n0 ? sc.u : -sc.u;
            const double unit = n0.norm() * cx.scale();
            // height: distance to the first separatrix met
            Rational travelled = 0, h = -1;
            for (;;) {
                const RayStep st = step_ray(cx, s);
                Rational best = -1;
                auto it = pieces.find(s.tri);
                if (it != pieces.end()) {
                    for (const Seg& sg : it->second) {
                        const Vec2 e = sg.b - sg.a;
                        const Rational den = cross(s.d, e);
                        if (den == 0) continue;
                        const Rational tau = cross(sg.a - s.x, e) / den;
                        const Rational sig = cross(sg.a - s.x, s.d) / den;
                        if (tau <= 0 || tau > st.dt || sig < 0 || sig > 1) continue;
                        if (best < 0 || tau < best) best = tau;
                    }
                }
                if (best < 0 && st.vertex_k >= 0) best = st.dt;
                if (best >= 0) {
                    h = travelled + best;
                    break;
                }
                travelled += st.dt;
                if (travelled.get_d() * unit > cap) throw NotPeriodic("cylinder height exceeds the cap");
                s = cross_edge(cx, st, s.d);
            }
            // mid-height point, carrying the leaf direction along
            const Rational half = h / 2;
            s = s0;
            Vec2 lu = u;
            travelled = 0;
            for (;;) {
                const RayStep st = step_ray(cx, s);
                if (travelled + st.dt >= half) {
                    s.x = s.x + s.d * Rational(half - travelled);
                    break;
                }
                travelled += st.dt;
                const Isometry inv = cx.tri(s.tri).nb[st.exit_edge].iso.inverse();
                lu = inv.apply_linear(lu);
                s = cross_edge(cx, st, s.d);
            }
            const Trace tr = trace_ray(surface, {cx.tri(s.tri).polygon, s.x}, lu, cap);
            if (tr.end != TraceEnd::Periodic) throw NotPeriodic("core leaf does not close within the cap");
            const CurveWord core = CurveWord(tr.crossings).unoriented();
            auto [pos, fresh] = index.emplace(core, static_cast<int>(out.cylinders.size()));
            if (fresh) {
                Cylinder cyl;
                cyl.direction = dir;
                cyl.circumference = tr.length;
                cyl.height = h.get_d() * unit;
                cyl.core = CurveWord(tr.crossings);
                out.cylinders.push_back(std::move(cyl));
            }
            (side > 0 ? out.cylinders[pos->second].bottom : out.cylinders[pos->second].top).push_back(k);
        }
    }
    std::sort(out.cylinders.begin(), out.cylinders.end(), [](const Cylinder& a, const Cylinder& b) {
        if (a.circumference != b.circumference) return a.circumference < b.circumference;
        if (a.height != b.height) return a.height < b.height;
        return a.core.unoriented() < b.core.unoriented();
    });
    return out;
}

std::vector<CylinderCurve> cylinder_curves_up_to(const HalfTranslationSurface& surface, double L) {
    std::vector<Direction> dirs;
    for (const SaddleConnection& sc : saddle_connections(surface, L)) dirs.push_back(sc.direction);
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    const double cap = std::max(default_cap(surface), 10 * L);
    std::vector<std::vector<CylinderCurve>> found(dirs.size());
    parallel_for(dirs.size(), [&](std::size_t i) {
        try {
            for (const Cylinder& c : cylinder_decomposition(surface, dirs[i], cap).cylinders)
                if (c.circumference <= L + 1e-9) found[i].push_back({c.core, c.circumference, dirs[i]});
        } catch (const NotPeriodic&) {
        }
    });
    std::vector<CylinderCurve> out;
    std::map<CurveWord, bool> seen;
    for (const auto& list : found)
        for (const CylinderCurve& c : list)
            if (seen.emplace(c.word.unoriented(), true).second) out.push_back(c);
    std::stable_sort(out.begin(), out.end(), [](const CylinderCurve& a, const CylinderCurve& b) {
        if (std::abs(a.length - b.length) > 1e-12) return a.length < b.length;
        return a.direction < b.direction;
    });
    return out;
}

std::string cylinders_csv(const std::vector<Cylinder>& list) {
    std::ostringstream out;
    out << "dirx,diry,circumference,height,word\n" << std::setprecision(12);
    for (const Cylinder& c : list)
        out << format_rational(c.direction.v.x) << ',' << format_rational(c.direction.v.y) << ',' << c.circumference
            << ',' << c.height << ",\"" << c.core.to_string() << "\"\n";
    return out.str();
}

}  // namespace halfflat
