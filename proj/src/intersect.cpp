#include "halfflat/curves.hpp"

#include "halfflat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

namespace halfflat {

namespace {

/// Segment index of every piece: segment j runs from visit j to visit j + 1.
std::vector<int> segment_of_pieces(const FlatGeodesic& g) {
    const int n = static_cast<int>(g.pieces.size());
    std::vector<int> seg(n, 0);
    const int k = static_cast<int>(g.visits.size());
    for (int j = 0; j < k; ++j) {
        const int end = g.visits[(j + 1) % k].first;
        for (int i = (g.visits[j].last + 1) % n;; i = (i + 1) % n) {
            seg[i] = j;
            if (i == end) break;
        }
    }
    return seg;
}

double wrap(double a, double theta) {
    a = std::fmod(a, theta);
    return a < 0 ? a + theta : a;
}

/// Whether germ x lies strictly inside the counterclockwise arc from `from` to `to`.
bool in_arc(const Complex& cx, const Germ& x, const Germ& from, const Germ& to) {
    const double theta = cx.vertices()[cx.vertex_of(from.corner)].angle;
    const double px = cx.ray_position(x.corner, x.dir);
    const double pf = cx.ray_position(from.corner, from.dir);
    const double pt = cx.ray_position(to.corner, to.dir);
    const double dx = wrap(px - pf, theta), dt = wrap(pt - pf, theta);
    if (dx < 1e-12 || std::abs(dx - dt) < 1e-12 || theta - dx < 1e-12)
        throw DegenerateConfiguration("germs at a cone point are not separated at tolerance");
    return dx < dt;
}

/// Left side of the curve at a visit: the arc from the outgoing germ counterclockwise to the incoming one.
bool on_left(const Complex& cx, const Germ& x, const VertexVisit& v) { return in_arc(cx, x, v.out, v.in); }

struct Segment {
    Germ start, end;
};

std::vector<Segment> segments_of(const FlatGeodesic& g) {
    std::vector<Segment> out;
    const std::size_t k = g.visits.size();
    for (std::size_t j = 0; j < k; ++j) out.push_back({g.visits[j].out, g.visits[(j + 1) % k].in});
    return out;
}

struct Key {
    int tri, edge;
    Rational x, y;
    int sa, sb;
    bool operator<(const Key& o) const {
        return std::tie(tri, edge, x, y, sa, sb) < std::tie(o.tri, o.edge, o.x, o.y, o.sa, o.sb);
    }
};

/// Transverse crossings away from cone points. With `self`, alpha and beta are the same curve.
void point_crossings(const Complex& cx, const FlatGeodesic& A, const FlatGeodesic& B, bool self,
                     std::vector<Contact>& out) {
    const std::vector<int> segA = segment_of_pieces(A), segB = segment_of_pieces(B);
    std::multimap<int, int> byTri;
    for (int i = 0; i < static_cast<int>(A.pieces.size()); ++i) byTri.emplace(A.pieces[i].tri, i);
    std::set<Key> seen;
    for (int j = 0; j < static_cast<int>(B.pieces.size()); ++j) {
        const Piece& pb = B.pieces[j];
        if (pb.a == pb.b) continue;
        auto [lo, hi] = byTri.equal_range(pb.tri);
        for (auto it = lo; it != hi; ++it) {
            const int i = it->second;
            if (self && i <= j) continue;
            const Piece& pa = A.pieces[i];
            if (pa.a == pa.b) continue;
            const Vec2 da = pa.b - pa.a, db = pb.b - pb.a;
            const Rational den = cross(da, db);
            if (den == 0) continue;
            const Vec2 w = pb.a - pa.a;
            const Rational t = cross(w, db) / den, u = cross(w, da) / den;
            if (t < 0 || t > 1 || u < 0 || u > 1) continue;
            const Vec2 X = pa.a + da * t;
            const Triangle& T = cx.tri(pb.tri);
            if (cx.corner_at(pb.tri, X) >= 0) continue;
            int edge = -1;
            for (int e = 0; e < 3; ++e)
                if (orient(T.p[e], T.p[(e + 1) % 3], X) == 0) edge = e;
            Key key{pb.tri, -1, X.x, X.y, segA[i], segB[j]};
            if (edge >= 0) {
                const TriLink& l = T.nb[edge];
                if (std::make_pair(l.tri, l.edge) < std::make_pair(pb.tri, edge)) {
                    const Vec2 Y = l.iso.inverse().apply(X);
                    key = {l.tri, l.edge, Y.x, Y.y, segA[i], segB[j]};
                } else {
                    key.edge = edge;
                }
            }
            if (self && key.sa > key.sb) std::swap(key.sa, key.sb);
            if (!seen.insert(key).second) continue;
            out.push_back({j, i, {}, sign(cross(db, da)) > 0, u.get_d()});
        }
    }
}

Contact vertex_contact(const Complex& cx, const FlatGeodesic& A, const FlatGeodesic& B, int va, int vb, bool forward) {
    const VertexVisit& a = A.visits[va];
    const VertexVisit& b = B.visits[vb];
    const Piece& pa = A.pieces[a.first];
    const Piece& pb = B.pieces[b.first];
    return {b.first, a.first, fan_walk(cx, {pb.tri, pb.vb}, {pa.tri, pa.vb}, true), forward, 1.0};
}

bool shares_germ(const VertexVisit& a, const VertexVisit& b) {
    return a.in == b.in || a.in == b.out || a.out == b.in || a.out == b.out;
}

/// Shared runs of saddle connections. Each run yields the beta germs leaving it, with their sides.
struct Chain {
    int a_start, a_end;  // alpha visits at the two ends of the run
    int b_entry, b_exit;  // beta visits where beta joins and leaves
    bool entry_at_start;  // beta joins at alpha's start vertex
    bool entry_left, exit_left;
};

std::vector<Chain> chains(const Complex& cx, const FlatGeodesic& A, const FlatGeodesic& B, bool self) {
    const std::vector<Segment> SA = segments_of(A), SB = segments_of(B);
    const int na = static_cast<int>(SA.size()), nb = static_cast<int>(SB.size());
    std::vector<Chain> out;
    if (na == 0 || nb == 0) return out;
    auto match = [&](int j, int k, int o) {
        j = ((j % na) + na) % na;
        k = ((k % nb) + nb) % nb;
        if (self && o > 0 && j == k) return false;
        return o > 0 ? SA[j].start == SB[k].start : SA[j].start == SB[k].end;
    };
    for (int j = 0; j < na; ++j)
        for (int k = 0; k < nb; ++k)
            for (int o : {+1, -1}) {
                if (!match(j, k, o) || match(j - 1, k - o, o)) continue;
                int m = 1;
                while (m < na && match(j + m, k + o * m, o)) ++m;
                if (m >= na) continue;  // the whole curve is shared
                const int a_start = j, a_end = (j + m) % na;
                const VertexVisit& vs = A.visits[a_start];
                const VertexVisit& ve = A.visits[a_end];
                Chain c{a_start, a_end, 0, 0, o > 0, false, false};
                if (o > 0) {
                    c.b_entry = k;
                    c.b_exit = (k + m) % nb;
                    c.entry_left = on_left(cx, B.visits[c.b_entry].in, vs);
                    c.exit_left = on_left(cx, B.visits[c.b_exit].out, ve);
                } else {
                    c.b_entry = (((k - m + 1) % nb) + nb) % nb;
                    c.b_exit = (k + 1) % nb;
                    c.entry_left = on_left(cx, B.visits[c.b_entry].in, ve);
                    c.exit_left = on_left(cx, B.visits[c.b_exit].out, vs);
                }
                out.push_back(c);
            }
    return out;
}

std::vector<Contact> all_contacts(const Complex& cx, const FlatGeodesic& A, const FlatGeodesic& B, bool self) {
    std::vector<Contact> out;
    point_crossings(cx, A, B, self, out);
    for (int p = 0; p < static_cast<int>(A.visits.size()); ++p)
        for (int q = 0; q < static_cast<int>(B.visits.size()); ++q) {
            if (self && q <= p) continue;
            const VertexVisit& a = A.visits[p];
            const VertexVisit& b = B.visits[q];
            if (a.vertex != b.vertex || shares_germ(a, b)) continue;
            const bool in_left = on_left(cx, b.in, a), out_left = on_left(cx, b.out, a);
            if (in_left != out_left) out.push_back(vertex_contact(cx, A, B, p, q, in_left));
        }
    const std::vector<Chain> cs = chains(cx, A, B, self);
    int left = 0, right = 0;
    for (const Chain& c : cs) {
        left += c.entry_left + c.exit_left;
        right += !c.entry_left + !c.exit_left;
    }
    const bool push_left = left <= right;
    for (const Chain& c : cs) {
        const int entry_a = c.entry_at_start ? c.a_start : c.a_end;
        const int exit_a = c.entry_at_start ? c.a_end : c.a_start;
        if (c.entry_left == push_left) out.push_back(vertex_contact(cx, A, B, entry_a, c.b_entry, push_left));
        if (c.exit_left == push_left) out.push_back(vertex_contact(cx, A, B, exit_a, c.b_exit, !push_left));
    }
    if (self) {
        // every shared run was seen from both of its strands
        const std::size_t chain_count = push_left ? left : right;
        out.resize(out.size() - chain_count / 2);
    }
    return out;
}

}  // namespace

std::vector<Contact> crossings(const HalfTranslationSurface& surface, const FlatGeodesic& alpha,
                               const FlatGeodesic& beta) {
    return all_contacts(surface.complex(), alpha, beta, false);
}

int intersection_number(const HalfTranslationSurface& surface, const CurveWord& w1, const CurveWord& w2) {
    const FlatGeodesic a = tighten(surface, w1), b = tighten(surface, w2);
    return static_cast<int>(crossings(surface, a, b).size());
}

int self_intersection(const HalfTranslationSurface& surface, const FlatGeodesic& g) {
    return static_cast<int>(all_contacts(surface.complex(), g, g, true).size());
}

int self_intersection(const HalfTranslationSurface& surface, const CurveWord& w) {
    return self_intersection(surface, tighten(surface, w));
}

CurveWord dehn_twist(const HalfTranslationSurface& surface, const CurveWord& beta, const CurveWord& alpha, int power) {
    const Complex& cx = surface.complex();
    const FlatGeodesic A = tighten(surface, alpha);
    if (self_intersection(surface, A) > 0) throw NotSimple("twisting curve " + alpha.to_string());
    const FlatGeodesic B = tighten(surface, beta);
    std::vector<Contact> cs = crossings(surface, A, B);
    if (cs.empty()) throw DisjointCurves(alpha.to_string() + " and " + beta.to_string());
    if (power == 0) return B.word(cx).reduced();
    const int n = static_cast<int>(A.steps.size());
    std::stable_sort(cs.begin(), cs.end(), [](const Contact& x, const Contact& y) {
        return std::tie(x.beta_pos, x.along) > std::tie(y.beta_pos, y.along);
    });
    TriWord out = B.steps;
    for (const Contact& c : cs) {
        TriWord loop = c.link;
        const bool fwd = c.forward == (power > 0);
        for (int r = 0; r < std::abs(power); ++r)
            for (int i = 0; i < n; ++i)
                loop.push_back(fwd ? A.steps[(c.alpha_pos + i) % n]
                                   : inverse_step(cx, A.steps[((c.alpha_pos - 1 - i) % n + n) % n]));
        for (auto it = c.link.rbegin(); it != c.link.rend(); ++it) loop.push_back(inverse_step(cx, *it));
        out.insert(out.begin() + c.beta_pos, loop.begin(), loop.end());
    }
    out = reduce(cx, out);
    if (out.empty()) throw InternalError("twisted curve is trivial");
    return crossing_word(cx, out).reduced();
}

double twist_length_gap(const HalfTranslationSurface& surface, const CurveWord& alpha, const CurveWord& beta) {
    const FlatGeodesic A = tighten(surface, alpha);
    if (self_intersection(surface, A) > 0) throw NotSimple("twisting curve " + alpha.to_string());
    const FlatGeodesic B = tighten(surface, beta);
    const int i = static_cast<int>(crossings(surface, A, B).size());
    if (i == 0) throw DisjointCurves(alpha.to_string() + " and " + beta.to_string());
    const double twisted = length(surface, dehn_twist(surface, beta, alpha, 1));
    return i * A.length - (twisted - B.length);
}

}  // namespace halfflat

namespace halfflat {

std::optional<EqualityCase> find_equality_case(const HalfTranslationSurface& surface, double L, double tolerance) {
    const Complex& cx = surface.complex();
    std::vector<FlatGeodesic> loops;
    for (const SaddleConnection& sc : saddle_connections(surface, L)) {
        if (sc.src != sc.dst) continue;
        try {
            FlatGeodesic g = tighten(surface, saddle_loop(cx, {{sc.src_corner, sc.local}}));
            if (std::abs(g.length - sc.length()) < 1e-9) loops.push_back(std::move(g));
        } catch (const ContractibleCurve&) {
        }
    }
    for (const FlatGeodesic& a : loops) {
        if (a.cylinder || self_intersection(surface, a) > 0) continue;
        for (const FlatGeodesic& b : loops) {
            const int i = static_cast<int>(crossings(surface, a, b).size());
            if (i == 0) continue;
            const CurveWord wa = a.word(cx), wb = b.word(cx);
            const double gap = twist_length_gap(surface, wa, wb);
            if (gap <= tolerance) return EqualityCase{wa, wb, i, gap};
        }
    }
    return std::nullopt;
}

}  // namespace halfflat
