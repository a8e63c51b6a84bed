#include "halfflat/curves.hpp"

#include "halfflat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace halfflat {

TriStep inverse_step(const Complex& cx, TriStep s) {
    const TriLink& l = cx.tri(s.tri).nb[s.edge];
    return {l.tri, l.edge};
}

namespace {

int next_tri(const Complex& cx, TriStep s) { return cx.tri(s.tri).nb[s.edge].tri; }

void check_steps(const Complex& cx, const TriWord& w) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (next_tri(cx, w[i]) != w[(i + 1) % w.size()].tri) throw InternalError("triangle word is not closed");
}

}  // namespace

TriWord triangle_word(const HalfTranslationSurface& surface, const CurveWord& word) {
    word.check_coherent(surface);
    if (word.empty()) throw ContractibleCurve("empty word");
    const Complex& cx = surface.complex();
    const auto& gl = surface.gluings();
    auto exit_of = [&](Crossing c) {
        const Gluing& g = gl.at(c.gluing);
        return c.sign > 0 ? cx.edge_owner(g.from.polygon, g.from.edge) : cx.edge_owner(g.to.polygon, g.to.edge);
    };
    TriWord out;
    const auto& st = word.steps();
    for (std::size_t i = 0; i < st.size(); ++i) {
        const auto [t, e] = exit_of(st[i]);
        out.push_back({t, e});
        const int entered = cx.tri(t).nb[e].tri;
        const int next = exit_of(st[(i + 1) % st.size()]).first;
        for (const auto& [pt, pe] : cx.polygon_path(entered, next)) out.push_back({pt, pe});
    }
    return out;
}

CurveWord crossing_word(const Complex& cx, const TriWord& steps) {
    std::vector<Crossing> out;
    for (const TriStep& s : steps) {
        const TriLink& l = cx.tri(s.tri).nb[s.edge];
        if (l.gluing >= 0) out.push_back({l.gluing, l.sign});
    }
    return CurveWord(std::move(out));
}

TriWord reduce(const Complex& cx, TriWord steps) {
    TriWord st;
    for (const TriStep& s : steps) {
        if (!st.empty() && inverse_step(cx, st.back()) == s)
            st.pop_back();
        else
            st.push_back(s);
    }
    std::size_t lo = 0, hi = st.size();
    while (hi - lo >= 2 && inverse_step(cx, st[hi - 1]) == st[lo]) {
        ++lo;
        --hi;
    }
    return TriWord(st.begin() + static_cast<std::ptrdiff_t>(lo), st.begin() + static_cast<std::ptrdiff_t>(hi));
}

TriWord fan_walk(const Complex& cx, Corner from, Corner to, bool ccw) {
    TriWord out;
    const std::size_t n = cx.vertices()[cx.vertex_of(from)].corners.size();
    Corner c = from;
    while (c != to) {
        if (out.size() > n) throw InternalError("corners are not at the same vertex");
        if (ccw) {
            out.push_back({c.tri, (c.k + 2) % 3});
            c = cx.ccw_next(c);
        } else {
            out.push_back({c.tri, c.k});
            c = cx.cw_next(c);
        }
    }
    return out;
}

Germ make_germ(const Complex& cx, Corner c, const Vec2& d) {
    auto [corner, v] = corner_containing(cx, c, d);
    mpz_class l = lcm(v.x.get_den(), v.y.get_den());
    mpz_class x = v.x.get_num() * (l / v.x.get_den());
    mpz_class y = v.y.get_num() * (l / v.y.get_den());
    mpz_class g = gcd(x, y);
    return {corner, Vec2(Rational(x / g), Rational(y / g))};
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kAngleTol = 1e-9;

struct Developed {
    std::vector<Isometry> iso;  // triangle i frame -> plane, i = 0..M
    std::vector<Vec2> L, R;     // portal endpoints, i = 0..M-1
    std::vector<int> lid, rid;  // combinatorial endpoint ids
};

Developed develop_steps(const Complex& cx, const TriWord& w, int periods) {
    const int n = static_cast<int>(w.size());
    const int M = n * periods;
    Developed d;
    d.iso.reserve(M + 1);
    d.iso.emplace_back();
    int next_id = 0;
    for (int i = 0; i < M; ++i) {
        const TriStep& s = w[i % n];
        const Triangle& T = cx.tri(s.tri);
        d.R.push_back(d.iso[i].apply(T.p[s.edge]));
        d.L.push_back(d.iso[i].apply(T.p[(s.edge + 1) % 3]));
        if (i == 0) {
            d.lid.push_back(next_id++);
            d.rid.push_back(next_id++);
        } else {
            const int f = cx.tri(w[(i - 1) % n].tri).nb[w[(i - 1) % n].edge].edge;
            if (s.edge == (f + 1) % 3) {
                d.rid.push_back(d.rid.back());
                d.lid.push_back(next_id++);
            } else {
                d.lid.push_back(d.lid.back());
                d.rid.push_back(next_id++);
            }
        }
        d.iso.push_back(d.iso[i] * T.nb[s.edge].iso);
    }
    return d;
}

struct PathPoint {
    Vec2 p;
    int side = 0;  // +1 left chain, -1 right chain, 0 start or end
    int id = -1;
};

/// Shortest path from s to t through the portals (simple stupid funnel, exact arithmetic).
std::vector<PathPoint> funnel(const Developed& d, const Vec2& s, const Vec2& t) {
    const int M = static_cast<int>(d.L.size());
    std::vector<PathPoint> path{{s, 0, -1}};
    Vec2 apex = s, left = d.L[0], right = d.R[0];
    int apex_id = -1, left_id = d.lid[0], right_id = d.rid[0];
    int left_idx = 0, right_idx = 0;
    for (int i = 1; i <= M; ++i) {
        const Vec2& l = i < M ? d.L[i] : t;
        const Vec2& r = i < M ? d.R[i] : t;
        const int lid = i < M ? d.lid[i] : -2;
        const int rid = i < M ? d.rid[i] : -2;
        if (sign(cross(right - apex, r - apex)) >= 0) {
            if (right_id == apex_id || sign(cross(left - apex, r - apex)) < 0) {
                right = r;
                right_id = rid;
                right_idx = i;
            } else {
                path.push_back({left, +1, left_id});
                apex = left;
                apex_id = left_id;
                i = left_idx;
                right = left;
                right_id = left_id;
                right_idx = left_idx;
                continue;
            }
        }
        if (sign(cross(left - apex, l - apex)) <= 0) {
            if (left_id == apex_id || sign(cross(right - apex, l - apex)) > 0) {
                left = l;
                left_id = lid;
                left_idx = i;
            } else {
                path.push_back({right, -1, right_id});
                apex = right;
                apex_id = right_id;
                i = right_idx;
                left = right;
                left_id = right_id;
                left_idx = right_idx;
                continue;
            }
        }
    }
    path.push_back({t, 0, -2});
    return path;
}

/// Point where the path crosses each portal; a path running along a portal crosses it at the left end.
std::vector<Vec2> crossing_points(const Developed& d, const std::vector<PathPoint>& path) {
    const int M = static_cast<int>(d.L.size());
    std::vector<int> lfirst, llast, rfirst, rlast;
    auto note = [](std::vector<int>& first, std::vector<int>& last, int id, int i) {
        if (id >= static_cast<int>(first.size())) {
            first.resize(id + 1, -1);
            last.resize(id + 1, -1);
        }
        if (first[id] < 0) first[id] = i;
        last[id] = i;
    };
    for (int i = 0; i < M; ++i) {
        note(lfirst, llast, d.lid[i], i);
        note(rfirst, rlast, d.rid[i], i);
    }
    std::vector<std::pair<int, int>> runs;
    for (const PathPoint& q : path) {
        if (q.side == 0)
            runs.emplace_back(q.id == -1 ? -1 : M, q.id == -1 ? -1 : M);
        else if (q.side > 0)
            runs.emplace_back(lfirst[q.id], llast[q.id]);
        else
            runs.emplace_back(rfirst[q.id], rlast[q.id]);
    }
    std::vector<Vec2> X(M);
    std::vector<char> set(M, 0);
    for (std::size_t j = 0; j < path.size(); ++j) {
        for (int i = std::max(runs[j].first, 0); i <= std::min(runs[j].second, M - 1); ++i) {
            if (set[i] && X[i] != path[j].p)
                X[i] = d.L[i];
            else
                X[i] = path[j].p;
            set[i] = 1;
        }
        if (j + 1 == path.size()) break;
        const Vec2& a = path[j].p;
        const Vec2 dir = path[j + 1].p - a;
        for (int i = runs[j].second + 1; i < runs[j + 1].first && i < M; ++i) {
            if (set[i]) continue;
            const Vec2 e = d.L[i] - d.R[i];
            const Rational c = cross(dir, e);
            if (c == 0) {
                X[i] = d.L[i];
            } else {
                const Rational u = cross(d.R[i] - a, e) / c;
                X[i] = a + dir * u;
            }
            set[i] = 1;
        }
    }
    for (int i = 0; i < M; ++i)
        if (!set[i]) throw InternalError("funnel path misses a portal");
    return X;
}

struct Violation {
    int a = 0, b = 0;
    int side = 0;
    double other = 0;
};

/// Checks the vertices met in portals [lo, hi); returns the worst one whose outer angle is below pi.
std::optional<Violation> worst_violation(const Complex& cx, const TriWord& w, const Developed& d,
                                         const std::vector<Vec2>& X, int lo, int hi, bool& any_visit) {
    const int n = static_cast<int>(w.size());
    const int M = static_cast<int>(X.size());
    std::optional<Violation> worst;
    any_visit = false;
    for (int side : {+1, -1}) {
        const auto& P = side > 0 ? d.L : d.R;
        const auto& Q = side > 0 ? d.R : d.L;
        const auto& id = side > 0 ? d.lid : d.rid;
        auto on = [&](int i) { return X[i] == P[i]; };
        for (int a = lo; a < hi; ++a) {
            if (!on(a) || (a > 0 && on(a - 1) && id[a - 1] == id[a])) continue;
            int b = a;
            while (b + 1 < M && on(b + 1) && id[b + 1] == id[a]) ++b;
            if (b + 1 >= M) throw InternalError("vertex visit runs past the developed window");
            if (b - a + 1 >= n) throw ContractibleCurve("curve winds around a single cone point");
            any_visit = true;
            const Vec2& v = P[a];
            double beta = angle_between(X[a - 1] - v, Q[a] - v);
            for (int i = a; i < b; ++i) beta += angle_between(Q[i] - v, Q[i + 1] - v);
            beta += angle_between(Q[b] - v, X[b + 1] - v);
            const TriStep& s = w[a % n];
            const Corner c{s.tri, side > 0 ? (s.edge + 1) % 3 : s.edge};
            const double theta = cx.vertices()[cx.vertex_of(c)].angle;
            if (beta < std::numbers::pi - 1e-7) throw InternalError("shortest path bends the wrong way");
            const double other = theta - beta;
            if (other < std::numbers::pi - kAngleTol && (!worst || other < worst->other))
                worst = Violation{a, b, side, other};
        }
    }
    return worst;
}

/// Replaces the walk around the vertex of a violation by the walk around its other side.
TriWord flip(const Complex& cx, const TriWord& w, const Violation& v) {
    const int n = static_cast<int>(w.size());
    const int m = v.b - v.a + 1;
    TriWord r(n);
    for (int i = 0; i < n; ++i) r[i] = w[(v.a + i) % n];
    const TriStep& first = r[0];
    const TriLink& last = cx.tri(r[m - 1].tri).nb[r[m - 1].edge];
    const Corner from{first.tri, v.side > 0 ? (first.edge + 1) % 3 : first.edge};
    const Corner to{last.tri, v.side > 0 ? last.edge : (last.edge + 1) % 3};
    TriWord out = fan_walk(cx, from, to, v.side < 0);
    out.insert(out.end(), r.begin() + m, r.end());
    return out;
}

Vec2 sample_point(const Triangle& T) {
    return T.p[0] * make_rational(31, 100) + T.p[1] * make_rational(33, 100) + T.p[2] * make_rational(36, 100);
}

void finish(const Complex& cx, FlatGeodesic& g) {
    const int n = static_cast<int>(g.pieces.size());
    for (Piece& p : g.pieces) {
        p.va = cx.corner_at(p.tri, p.a);
        p.vb = cx.corner_at(p.tri, p.b);
    }
    double total = 0;
    std::vector<double> len(n);
    for (int i = 0; i < n; ++i) {
        len[i] = (g.pieces[i].b - g.pieces[i].a).norm() * cx.scale();
        total += len[i];
    }
    if (!g.cylinder) g.length = total;
    auto zero = [&](int i) { return g.pieces[i].a == g.pieces[i].b; };
    for (int i = 0; i < n; ++i) {
        const Piece& p = g.pieces[i];
        if (p.vb < 0 || zero(i)) continue;
        VertexVisit v;
        v.first = i;
        int j = i;
        while (zero((j + 1) % n)) j = (j + 1) % n;
        v.last = j;
        const Piece& q = g.pieces[(j + 1) % n];
        v.in = make_germ(cx, {p.tri, p.vb}, p.a - p.b);
        v.out = make_germ(cx, {q.tri, q.va}, q.b - q.a);
        v.vertex = cx.vertex_of(v.in.corner);
        const double theta = cx.vertices()[v.vertex].angle;
        const double pin = cx.ray_position(v.in.corner, v.in.dir);
        const double pout = cx.ray_position(v.out.corner, v.out.dir);
        v.left = std::fmod(pin - pout + 2 * theta, theta);
        v.right = theta - v.left;
        g.visits.push_back(v);
    }
    std::sort(g.visits.begin(), g.visits.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    auto theta_of = [&](int i) { return Direction(g.pieces[i].b - g.pieces[i].a).angle(); };
    if (g.visits.empty()) {
        int i = 0;
        while (zero(i)) ++i;
        g.segments.push_back({g.length, theta_of(i)});
    } else {
        const std::size_t k = g.visits.size();
        for (std::size_t j = 0; j < k; ++j) {
            const int start = (g.visits[j].last + 1) % n;
            const int end = g.visits[(j + 1) % k].first;
            double s = 0;
            for (int i = start;; i = (i + 1) % n) {
                s += len[i];
                if (i == end) break;
            }
            g.segments.push_back({s, theta_of(start)});
        }
    }
    g.cylinder = g.cylinder || std::all_of(g.visits.begin(), g.visits.end(), [](const VertexVisit& v) {
                     return std::abs(v.left - std::numbers::pi) < kAngleTol ||
                            std::abs(v.right - std::numbers::pi) < kAngleTol;
                 });
}

std::optional<FlatGeodesic> straight_representative(const Complex& cx, const TriWord& w) {
    const int n = static_cast<int>(w.size());
    const Developed d = develop_steps(cx, w, 1);
    const Isometry H = d.iso[n];
    if (H.eps != 1 || (H.t.x == 0 && H.t.y == 0)) return std::nullopt;
    const Vec2& t = H.t;
    Rational cl = cross(t, d.L[0]), cr = cross(t, d.R[0]);
    for (int i = 1; i < n; ++i) {
        cl = std::min(cl, Rational(cross(t, d.L[i])));
        cr = std::max(cr, Rational(cross(t, d.R[i])));
    }
    if (cr > cl) return std::nullopt;
    const Rational mid = (cl + cr) / 2;
    std::vector<Vec2> X(n);
    for (int i = 0; i < n; ++i) {
        const Rational a = cross(t, d.R[i]), b = cross(t, d.L[i]);
        X[i] = a == b ? d.L[i] : d.R[i] + (d.L[i] - d.R[i]) * Rational((mid - a) / (b - a));
    }
    FlatGeodesic g;
    g.steps = w;
    g.holonomy = H;
    g.cylinder = cr < cl;
    g.length = t.norm() * cx.scale();
    for (int i = 0; i < n; ++i) {
        const Isometry inv = d.iso[i].inverse();
        const Vec2 entry = i == 0 ? X[n - 1] - t : X[i - 1];
        g.pieces.push_back({w[i].tri, inv.apply(entry), inv.apply(X[i])});
    }
    finish(cx, g);
    return g;
}

}  // namespace

FlatGeodesic tighten(const HalfTranslationSurface& surface, const TriWord& input) {
    const Complex& cx = surface.complex();
    check_steps(cx, input);
    TriWord w = reduce(cx, input);
    int periods = 4;
    for (int iter = 0; iter < 100000; ++iter) {
        if (w.empty()) throw ContractibleCurve("word reduces to the trivial loop");
        check_steps(cx, w);
        if (auto g = straight_representative(cx, w)) return *g;
        const int n = static_cast<int>(w.size());
        const Developed d = develop_steps(cx, w, periods);
        const int M = n * periods;
        const Vec2 s0 = sample_point(cx.tri(w[0].tri));
        const std::vector<PathPoint> path = funnel(d, d.iso[0].apply(s0), d.iso[M].apply(s0));
        const std::vector<Vec2> X = crossing_points(d, path);
        const Isometry H = d.iso[n];
        const int c = periods / 2 - 1;
        bool periodic = true;
        for (int i = c * n; i < (c + 1) * n && periodic; ++i) periodic = X[i + n] == H.apply(X[i]);
        if (!periodic) {
            if (periods >= 256) throw InternalError("shortest paths do not settle into a period");
            periods *= 2;
            continue;
        }
        bool any_visit = false;
        const auto bad = worst_violation(cx, w, d, X, c * n, (c + 1) * n, any_visit);
        if (bad) {
            w = reduce(cx, flip(cx, w, *bad));
            periods = 4;
            continue;
        }
        if (!any_visit) {
            if (H.is_identity()) throw ContractibleCurve("curve has a representative of length zero");
            throw InternalError("periodic straight path missed by the cylinder test");
        }
        FlatGeodesic g;
        g.steps = w;
        g.holonomy = H;
        for (int i = c * n; i < (c + 1) * n; ++i) {
            const Isometry inv = d.iso[i].inverse();
            g.pieces.push_back({w[i % n].tri, inv.apply(X[i - 1]), inv.apply(X[i])});
        }
        finish(cx, g);
        return g;
    }
    throw InternalError("tightening did not terminate");
}

FlatGeodesic tighten(const HalfTranslationSurface& surface, const CurveWord& word) {
    return tighten(surface, triangle_word(surface, word.reduced()));
}

double length(const HalfTranslationSurface& surface, const CurveWord& word) { return tighten(surface, word).length; }

std::pair<Corner, Vec2> corner_for(const Complex& cx, int polygon, int vertex, const Vec2& d) {
    for (int t : cx.polygon_triangles().at(polygon))
        for (int k = 0; k < 3; ++k)
            if (cx.tri(t).pv[k] == vertex && cx.in_corner({t, k}, d)) return {{t, k}, d};
    // d leaves the polygon: continue around the fan
    for (int t : cx.polygon_triangles().at(polygon))
        for (int k = 0; k < 3; ++k)
            if (cx.tri(t).pv[k] == vertex) return corner_containing(cx, {t, k}, d);
    throw InternalError("no corner at polygon vertex");
}

TriWord saddle_loop(const Complex& cx, const std::vector<std::pair<Corner, Vec2>>& connections) {
    TriWord out;
    const std::size_t m = connections.size();
    for (std::size_t i = 0; i < m; ++i) {
        const SegmentPath sp = saddle_path(cx, connections[i].first, connections[i].second);
        for (const auto& [t, e] : sp.steps) out.push_back({t, e});
        const TriWord walk = fan_walk(cx, sp.end, connections[(i + 1) % m].first, true);
        out.insert(out.end(), walk.begin(), walk.end());
    }
    return out;
}

}  // namespace halfflat
