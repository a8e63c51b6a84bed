#include "halfflat/saddle.hpp"

#include "halfflat/errors.hpp"
#include "halfflat/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <tuple>

namespace halfflat {

namespace {

struct Germ {
    int tri;
    int k;
    Vec2 dir;
};

bool germ_less(const Germ& a, const Germ& b) {
    if (a.tri != b.tri) return a.tri < b.tri;
    if (a.k != b.k) return a.k < b.k;
    if (a.dir.x != b.dir.x) return a.dir.x < b.dir.x;
    return a.dir.y < b.dir.y;
}

struct Found {
    SaddleConnection sc;
    Germ start;
    Germ end;
};

struct Wedge {
    int tri;
    int edge;      ///< window edge of tri
    Isometry iso;  ///< tri frame -> corner frame
    Vec2 right;
    Vec2 left;
};

double segment_distance2(const Vec2& o, const Vec2& a, const Vec2& b) {
    const Vec2 da = a - o, db = b - o;
    const double ax = da.dx(), ay = da.dy(), bx = db.dx(), by = db.dy();
    const double ex = bx - ax, ey = by - ay;
    const double len2 = ex * ex + ey * ey;
    double t = len2 > 0 ? -(ax * ex + ay * ey) / len2 : 0;
    t = std::clamp(t, 0.0, 1.0);
    const double px = ax + t * ex, py = ay + t * ey;
    return px * px + py * py;
}

class CornerSearch {
public:
    CornerSearch(const Complex& cx, Corner c, const Rational& max_len2, double max_raw2, std::atomic<std::int64_t>& work,
                 std::int64_t budget)
        : cx_(cx), c_(c), max_len2_(max_len2), max_raw2_(max_raw2), work_(work), budget_(budget) {}

    std::vector<Found> run() {
        const Triangle& T = cx_.tri(c_.tri);
        const int k = c_.k;
        origin_ = T.p[k];
        // the edge leaving the corner is itself a connection
        const Vec2 h = T.p[(k + 1) % 3] - origin_;
        const TriLink& l = T.nb[k];
        const Germ end{l.tri, l.edge, l.iso.inverse().apply_linear(-h)};
        record(h, end, Corner{c_.tri, (k + 1) % 3});

        std::vector<Wedge> stack{{c_.tri, (k + 1) % 3, Isometry{}, T.p[(k + 1) % 3] - origin_, T.p[(k + 2) % 3] - origin_}};
        while (!stack.empty()) {
            Wedge w = std::move(stack.back());
            stack.pop_back();
            const Triangle& t = cx_.tri(w.tri);
            const Vec2 a = w.iso.apply(t.p[w.edge]);
            const Vec2 b = w.iso.apply(t.p[(w.edge + 1) % 3]);
            if (segment_distance2(origin_, a, b) > max_raw2_ * (1 + 1e-9) + 1e-12) continue;
            if (work_.fetch_add(1) >= budget_) throw CapTooLarge("saddle connection search exceeded its work budget");

            const TriLink& link = t.nb[w.edge];
            const Triangle& t2 = cx_.tri(link.tri);
            const int j = link.edge;
            const Isometry iso2 = w.iso * link.iso;
            const Vec2 apex = iso2.apply(t2.p[(j + 2) % 3]);
            const Vec2 u = apex - origin_;
            const int sr = sign(cross(w.right, u));
            const int sl = sign(cross(u, w.left));
            if (sr > 0 && sl > 0) {
                const Vec2 back = iso2.inverse().apply_linear(-u);
                record(u, Germ{link.tri, (j + 2) % 3, back}, Corner{link.tri, (j + 2) % 3});
                stack.push_back({link.tri, (j + 1) % 3, iso2, w.right, u});
                stack.push_back({link.tri, (j + 2) % 3, iso2, u, w.left});
            } else if (sr <= 0) {
                stack.push_back({link.tri, (j + 2) % 3, iso2, std::move(w.right), std::move(w.left)});
            } else {
                stack.push_back({link.tri, (j + 1) % 3, iso2, std::move(w.right), std::move(w.left)});
            }
        }
        return std::move(found_);
    }

private:
    void record(const Vec2& h, const Germ& end, Corner end_corner) {
        const Rational len2 = h.norm2() * cx_.scale2();
        if (len2 > max_len2_) return;
        const Germ start{c_.tri, c_.k, h};
        if (!germ_less(start, end)) return;
        SaddleConnection sc;
        sc.src = cx_.vertex_of(c_);
        sc.src_corner = c_;
        sc.dst = cx_.vertex_of(end_corner);
        sc.dst_corner = end_corner;
        sc.local = h;
        sc.holonomy = canonical_direction(h);
        sc.len2 = len2;
        sc.direction = Direction(h);
        found_.push_back({std::move(sc), start, end});
    }

    const Complex& cx_;
    Corner c_;
    Rational max_len2_;
    double max_raw2_;
    std::atomic<std::int64_t>& work_;
    std::int64_t budget_;
    Vec2 origin_;
    std::vector<Found> found_;
};

}  // namespace

std::vector<SaddleConnection> saddle_connections(const HalfTranslationSurface& surface, double L,
                                                 const SaddleOptions& options) {
    const Complex& cx = surface.complex();
    if (!(L > 0)) return {};
    const Rational Lq = rational_from_double(L);
    const Rational max_len2 = Lq * Lq;
    const double max_raw2 = L * L / cx.scale2().get_d();

    std::vector<Corner> corners;
    for (int t = 0; t < static_cast<int>(cx.triangles().size()); ++t)
        for (int k = 0; k < 3; ++k) corners.push_back({t, k});
    std::vector<std::vector<Found>> per(corners.size());
    std::atomic<std::int64_t> work{0};
    parallel_for(corners.size(), [&](std::size_t i) {
        per[i] = CornerSearch(cx, corners[i], max_len2, max_raw2, work, options.budget).run();
    });

    std::vector<SaddleConnection> out;
    for (auto& v : per)
        for (auto& f : v) out.push_back(std::move(f.sc));
    std::sort(out.begin(), out.end(), [](const SaddleConnection& a, const SaddleConnection& b) {
        if (a.len2 != b.len2) return a.len2 < b.len2;
        if (a.holonomy.x != b.holonomy.x) return a.holonomy.x < b.holonomy.x;
        if (a.holonomy.y != b.holonomy.y) return a.holonomy.y < b.holonomy.y;
        return std::tie(a.src, a.dst, a.src_corner) < std::tie(b.src, b.dst, b.src_corner);
    });
    return out;
}

SegmentPath saddle_path(const Complex& cx, Corner c, const Vec2& h) {
    SegmentPath out;
    const Vec2 target = cx.tri(c.tri).p[c.k] + h;
    RayState s{c.tri, cx.tri(c.tri).p[c.k], h};
    Isometry iso;  // current triangle frame -> start frame
    Rational travelled = 0;
    for (;;) {
        const RayStep step = step_ray(cx, s);
        travelled += step.dt;
        if (step.vertex_k >= 0) {
            if (travelled != 1 || iso.apply(step.to) != target)
                throw InternalError("segment meets a vertex before its end");
            out.end = {s.tri, step.vertex_k};
            return out;
        }
        if (travelled >= 1) throw InternalError("segment does not end at a vertex");
        out.steps.emplace_back(s.tri, step.exit_edge);
        iso = iso * cx.tri(s.tri).nb[step.exit_edge].iso;
        s = cross_edge(cx, step, s.d);
    }
}

std::string saddle_csv(const std::vector<SaddleConnection>& list) {
    std::ostringstream out;
    out << "len2_num,len2_den,dx,dy,src,dst\n";
    for (const auto& sc : list)
        out << sc.len2.get_num().get_str() << ',' << sc.len2.get_den().get_str() << ',' << format_rational(sc.holonomy.x)
            << ',' << format_rational(sc.holonomy.y) << ',' << sc.src << ',' << sc.dst << '\n';
    return out.str();
}

}  // namespace halfflat
