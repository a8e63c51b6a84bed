#include "halfflat/complex.hpp"

#include "halfflat/errors.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <queue>

namespace halfflat {

namespace {

bool in_closed_triangle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
    return orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0;
}

/// Ear clipping; returns triangles as polygon vertex index triples in counterclockwise order.
std::vector<std::array<int, 3>> ear_clip(const Polygon& poly) {
    std::vector<int> rest(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) rest[i] = static_cast<int>(i);
    std::vector<std::array<int, 3>> out;
    while (rest.size() > 3) {
        const std::size_t m = rest.size();
        bool clipped = false;
        for (std::size_t i = 0; i < m && !clipped; ++i) {
            const int a = rest[(i + m - 1) % m], b = rest[i], c = rest[(i + 1) % m];
            if (orient(poly[a], poly[b], poly[c]) <= 0) continue;
            bool empty = true;
            for (int v : rest) {
                if (v == a || v == b || v == c) continue;
                if (in_closed_triangle(poly[a], poly[b], poly[c], poly[v])) {
                    empty = false;
                    break;
                }
            }
            if (!empty) continue;
            out.push_back({a, b, c});
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
            clipped = true;
        }
        if (!clipped) throw InternalError("ear clipping found no ear");
    }
    if (orient(poly[rest[0]], poly[rest[1]], poly[rest[2]]) <= 0)
        throw InternalError("ear clipping left a degenerate triangle");
    out.push_back({rest[0], rest[1], rest[2]});
    return out;
}

double unsigned_angle(const Vec2& a, const Vec2& b) {
    return std::atan2(std::abs(cross(a, b).get_d()), dot(a, b).get_d());
}

}  // namespace

Complex Complex::build(const HalfTranslationSurface& surface) {
    const ValidationReport report = validate(surface);
    if (!report.ok) throw InvalidSurface(report.diagnostics.front());

    Complex cx;
    cx.scale2_ = surface.scale2();
    cx.scale_ = surface.scale();
    const auto& polys = surface.polygons();
    cx.poly_tris_.resize(polys.size());
    cx.edge_owner_.resize(polys.size());

    for (std::size_t pi = 0; pi < polys.size(); ++pi) {
        const Polygon& poly = polys[pi];
        const int n = static_cast<int>(poly.size());
        cx.edge_owner_[pi].assign(n, {-1, -1});
        std::map<std::pair<int, int>, std::pair<int, int>> diagonals;
        for (const auto& idx : ear_clip(poly)) {
            const int t = static_cast<int>(cx.tris_.size());
            Triangle tri;
            tri.polygon = static_cast<int>(pi);
            tri.pv = idx;
            for (int k = 0; k < 3; ++k) tri.p[k] = poly[idx[k]];
            cx.tris_.push_back(tri);
            cx.poly_tris_[pi].push_back(t);
            for (int k = 0; k < 3; ++k) {
                const int u = idx[k], w = idx[(k + 1) % 3];
                if (w == (u + 1) % n) {
                    cx.edge_owner_[pi][u] = {t, k};
                    continue;
                }
                const std::pair<int, int> key{std::min(u, w), std::max(u, w)};
                auto it = diagonals.find(key);
                if (it == diagonals.end()) {
                    diagonals.emplace(key, std::make_pair(t, k));
                } else {
                    auto [t2, k2] = it->second;
                    cx.tris_[t].nb[k] = TriLink{t2, k2, Isometry{}, -1, 0};
                    cx.tris_[t2].nb[k2] = TriLink{t, k, Isometry{}, -1, 0};
                }
            }
        }
    }

    const auto& gluings = surface.gluings();
    for (std::size_t g = 0; g < gluings.size(); ++g) {
        const auto [tf, ef] = cx.edge_owner(gluings[g].from.polygon, gluings[g].from.edge);
        const auto [tt, et] = cx.edge_owner(gluings[g].to.polygon, gluings[g].to.edge);
        const Isometry iso = surface.gluing_map(static_cast<int>(g));
        cx.tris_[tf].nb[ef] = TriLink{tt, et, iso, static_cast<int>(g), +1};
        cx.tris_[tt].nb[et] = TriLink{tf, ef, iso.inverse(), static_cast<int>(g), -1};
    }

    for (auto& tri : cx.tris_) {
        for (int k = 0; k < 3; ++k) {
            if (tri.nb[k].tri < 0) throw InternalError("unlinked triangle edge");
            tri.angle[k] = unsigned_angle(tri.p[(k + 1) % 3] - tri.p[k], tri.p[(k + 2) % 3] - tri.p[k]);
            tri.vclass[k] = -1;
        }
    }

    // Vertex classes in the order their first polygon corner appears.
    std::map<std::pair<int, int>, Corner> corner_of;
    for (int t = 0; t < static_cast<int>(cx.tris_.size()); ++t)
        for (int k = 0; k < 3; ++k) corner_of.emplace(std::make_pair(cx.tris_[t].polygon, cx.tris_[t].pv[k]), Corner{t, k});
    for (std::size_t pi = 0; pi < polys.size(); ++pi) {
        for (int v = 0; v < static_cast<int>(polys[pi].size()); ++v) {
            const Corner start = corner_of.at({static_cast<int>(pi), v});
            if (cx.tris_[start.tri].vclass[start.k] >= 0) continue;
            const int id = static_cast<int>(cx.vclasses_.size());
            VertexClass vc;
            Corner c = start;
            do {
                Triangle& tri = cx.tris_[c.tri];
                if (tri.vclass[c.k] >= 0) throw InternalError("corner cycle revisits a corner");
                tri.vclass[c.k] = id;
                tri.offset[c.k] = vc.angle;
                vc.angle += tri.angle[c.k];
                vc.corners.push_back(c);
                c = cx.ccw_next(c);
            } while (c != start);
            vc.multiple = static_cast<int>(std::lround(vc.angle / std::numbers::pi));
            cx.vclasses_.push_back(std::move(vc));
        }
    }
    return cx;
}

Corner Complex::ccw_next(Corner c) const {
    const TriLink& l = tris_[c.tri].nb[(c.k + 2) % 3];
    return {l.tri, l.edge};
}

Corner Complex::cw_next(Corner c) const {
    const TriLink& l = tris_[c.tri].nb[c.k];
    return {l.tri, (l.edge + 1) % 3};
}

bool Complex::in_corner(Corner c, const Vec2& d) const {
    const Triangle& t = tris_[c.tri];
    const Vec2 a = t.p[(c.k + 1) % 3] - t.p[c.k];
    const Vec2 b = t.p[(c.k + 2) % 3] - t.p[c.k];
    const int sa = sign(cross(a, d));
    if (sa < 0) return false;
    if (sa == 0 && sign(dot(a, d)) <= 0) return false;
    return sign(cross(d, b)) > 0;
}

double Complex::ray_position(Corner c, const Vec2& d) const {
    const Triangle& t = tris_[c.tri];
    const Vec2 a = t.p[(c.k + 1) % 3] - t.p[c.k];
    double ang = std::atan2(cross(a, d).get_d(), dot(a, d).get_d());
    if (ang < 0) ang += 2 * std::numbers::pi;
    return t.offset[c.k] + ang;
}

int Complex::corner_at(int t, const Vec2& p) const {
    for (int k = 0; k < 3; ++k)
        if (tris_[t].p[k] == p) return k;
    return -1;
}

std::vector<std::pair<int, int>> Complex::polygon_path(int a, int b) const {
    if (tris_[a].polygon != tris_[b].polygon) throw InternalError("polygon_path across polygons");
    std::map<int, std::pair<int, int>> prev;  // tri -> (previous tri, exit edge from previous)
    std::queue<int> q;
    q.push(a);
    prev[a] = {-1, -1};
    while (!q.empty()) {
        const int t = q.front();
        q.pop();
        if (t == b) break;
        for (int k = 0; k < 3; ++k) {
            const TriLink& l = tris_[t].nb[k];
            if (l.gluing >= 0 || prev.count(l.tri)) continue;
            prev[l.tri] = {t, k};
            q.push(l.tri);
        }
    }
    std::vector<std::pair<int, int>> path;
    for (int t = b; t != a;) {
        const auto [p, k] = prev.at(t);
        path.emplace_back(p, k);
        t = p;
    }
    return {path.rbegin(), path.rend()};
}

}  // namespace halfflat
