#pragma once

#include "halfflat/complex.hpp"
#include "halfflat/surface.hpp"
#include "halfflat/word.hpp"

#include <optional>
#include <vector>

namespace halfflat {

/// Direction modulo sign. The stored vector has dy > 0, or dy = 0 and dx > 0.
struct Direction {
    Vec2 v{1, 0};

    Direction() = default;
    explicit Direction(const Vec2& w);
    Direction(long dx, long dy) : Direction(Vec2(dx, dy)) {}

    /// Angle in [0, pi).
    double angle() const;
    bool operator==(const Direction& o) const { return cross(v, o.v) == 0; }
    /// Order by angle.
    bool operator<(const Direction& o) const;
};

Vec2 canonical_direction(const Vec2& w);

/// A point given in the frame of one polygon.
struct SurfacePoint {
    int polygon = 0;
    Vec2 p;
};

struct TraceSegment {
    int polygon = 0;
    Vec2 entry;
    Vec2 exit;
    double length = 0;
    std::size_t crossings_before = 0;  ///< gluing crossings recorded before this segment
};

enum class TraceEnd { ConePointHit, LengthCap, Periodic };

struct Trace {
    std::vector<TraceSegment> segments;
    std::vector<Crossing> crossings;
    TraceEnd end = TraceEnd::LengthCap;
    int vertex = -1;      ///< vertex class for ConePointHit
    double length = 0;    ///< metric length travelled
    bool along_edge = false;  ///< some part of the ray ran along an edge (left side rule applied)
};

struct TraceOptions {
    bool continue_through_marked = true;
};

/// Traces the straight ray from `start` in direction `dir` (start polygon frame) up to metric length `cap`.
/// At a polygon vertex the ray leaves through that polygon's corner; AmbiguousStart if dir does not enter it.
Trace trace_ray(const HalfTranslationSurface& surface, const SurfacePoint& start, const Vec2& dir, double cap,
                const TraceOptions& options = {});

struct PlacedPolygon {
    int polygon = 0;
    Isometry iso;  ///< polygon frame -> plane
};

struct Sleeve {
    std::vector<PlacedPolygon> placed;  ///< n + 1 copies for a word of n crossings
    Isometry holonomy;                  ///< maps copy 0 onto copy n
};

Sleeve develop(const HalfTranslationSurface& surface, const CurveWord& word);

// ---------------------------------------------------------------------------
// Triangle-level ray stepping shared by the enumeration and decomposition code.

/// Position of a ray inside one triangle: point x (triangle frame), direction d.
struct RayState {
    int tri = 0;
    Vec2 x;
    Vec2 d;
};

struct RayStep {
    int tri = 0;
    Vec2 from;
    Vec2 to;
    Rational dt;        ///< parameter advanced, in units of |d|
    int exit_edge = -1; ///< edge crossed, or -1 when the ray ends at a vertex
    int vertex_k = -1;  ///< corner index hit
    bool along_edge = false;
};

/// Advances to the next edge or vertex; x must be in the closed triangle with d entering it.
RayStep step_ray(const Complex& cx, const RayState& s);
/// State just across the exit edge of a step.
RayState cross_edge(const Complex& cx, const RayStep& step, const Vec2& d);

/// Triangle of `polygon` that a ray from x in direction d enters (left side rule on edges). -1 if none.
int locate_in_polygon(const Complex& cx, int polygon, const Vec2& x, const Vec2& d);
/// Starting from corner c, walks counterclockwise around its vertex to the corner containing direction d
/// (given in c's triangle frame). Returns the corner and the direction in its frame.
std::pair<Corner, Vec2> corner_containing(const Complex& cx, Corner c, Vec2 d);
/// Transforms a vector from corner c's frame into ccw_next(c)'s frame.
Vec2 to_ccw_frame(const Complex& cx, Corner c, const Vec2& v);

}  // namespace halfflat
