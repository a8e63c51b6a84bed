#pragma once

#include "halfflat/geometry.hpp"
#include "halfflat/saddle.hpp"
#include "halfflat/word.hpp"

#include <optional>
#include <vector>

namespace halfflat {

/// Step of a closed path in the dual graph: leave triangle `tri` through edge `edge`.
struct TriStep {
    int tri = 0;
    int edge = 0;
    bool operator==(const TriStep&) const = default;
};
using TriWord = std::vector<TriStep>;

TriWord triangle_word(const HalfTranslationSurface& surface, const CurveWord& word);
CurveWord crossing_word(const Complex& cx, const TriWord& steps);
/// Cyclic reduction: removes steps immediately undone by the next one.
TriWord reduce(const Complex& cx, TriWord steps);
TriStep inverse_step(const Complex& cx, TriStep s);
/// Steps walking around the vertex of `from` to `to` (same vertex class), counterclockwise or clockwise.
TriWord fan_walk(const Complex& cx, Corner from, Corner to, bool ccw);

/// Outgoing direction at a cone point, normalized: the corner containing it and a primitive integer vector.
struct Germ {
    Corner corner;
    Vec2 dir;
    auto operator<=>(const Germ& o) const {
        if (auto c = corner <=> o.corner; c != 0) return c;
        if (dir.x != o.dir.x) return dir.x < o.dir.x ? std::strong_ordering::less : std::strong_ordering::greater;
        if (dir.y != o.dir.y) return dir.y < o.dir.y ? std::strong_ordering::less : std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    bool operator==(const Germ& o) const { return corner == o.corner && dir == o.dir; }
};
Germ make_germ(const Complex& cx, Corner c, const Vec2& d);

/// Part of a representative inside one triangle, in that triangle's frame. Zero length while at a vertex.
struct Piece {
    int tri = 0;
    Vec2 a;
    Vec2 b;
    int va = -1;  ///< corner index if a is a vertex
    int vb = -1;
};

struct VertexVisit {
    int vertex = 0;
    int first = 0;  ///< first piece ending at the vertex
    int last = 0;   ///< last piece of the visit; piece last + 1 leaves the vertex
    Germ in;        ///< germ pointing back along the arriving segment
    Germ out;
    double left = 0;   ///< angle on the left of the curve
    double right = 0;
};

struct GeodesicSegment {
    double length = 0;
    double theta = 0;  ///< direction modulo pi
};

struct FlatGeodesic {
    TriWord steps;              ///< piece i lies in steps[i].tri and leaves through steps[i].edge
    std::vector<Piece> pieces;
    std::vector<VertexVisit> visits;
    std::vector<GeodesicSegment> segments;
    double length = 0;
    bool cylinder = false;
    Isometry holonomy;

    CurveWord word(const Complex& cx) const { return crossing_word(cx, steps); }
};

FlatGeodesic tighten(const HalfTranslationSurface& surface, const CurveWord& word);
FlatGeodesic tighten(const HalfTranslationSurface& surface, const TriWord& steps);
double length(const HalfTranslationSurface& surface, const CurveWord& word);

/// Closed curve following saddle connections in order; consecutive ones must share endpoints.
/// Each entry is a start corner and a holonomy in that corner's frame.
TriWord saddle_loop(const Complex& cx, const std::vector<std::pair<Corner, Vec2>>& connections);
/// Corner at polygon vertex `vertex` containing direction d (polygon frame), with d in that corner's frame.
std::pair<Corner, Vec2> corner_for(const Complex& cx, int polygon, int vertex, const Vec2& d);

/// A point where two representatives cross.
struct Contact {
    int beta_pos = 0;   ///< piece of beta where alpha is inserted
    int alpha_pos = 0;  ///< piece of alpha the inserted loop starts from
    TriWord link;       ///< steps from beta's triangle to alpha's triangle
    bool forward = true;  ///< follow alpha forwards for a positive twist
    double along = 0;     ///< position on beta's piece, for ordering insertions
};

/// Crossings of beta with alpha. Where they share saddle connections alpha is pushed off to the side
/// giving fewer crossings.
std::vector<Contact> crossings(const HalfTranslationSurface& surface, const FlatGeodesic& alpha,
                               const FlatGeodesic& beta);
int intersection_number(const HalfTranslationSurface& surface, const CurveWord& w1, const CurveWord& w2);
int self_intersection(const HalfTranslationSurface& surface, const FlatGeodesic& g);
int self_intersection(const HalfTranslationSurface& surface, const CurveWord& w);

CurveWord dehn_twist(const HalfTranslationSurface& surface, const CurveWord& beta, const CurveWord& alpha, int power);
double twist_length_gap(const HalfTranslationSurface& surface, const CurveWord& alpha, const CurveWord& beta);

struct EqualityCase {
    CurveWord alpha;
    CurveWord beta;
    int intersection = 0;
    double gap = 0;
};
/// Searches saddle-connection loops for a singular simple alpha and a beta among cylinder cores and loops
/// with i(alpha, beta) >= 1 and gap <= tolerance.
std::optional<EqualityCase> find_equality_case(const HalfTranslationSurface& surface, double L, double tolerance = 1e-6);

}  // namespace halfflat
