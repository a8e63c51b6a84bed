#pragma once

#include "halfflat/rational.hpp"
#include "halfflat/surface.hpp"

#include <array>
#include <vector>

namespace halfflat {

/// Link across edge k of a triangle.
struct TriLink {
    int tri = -1;
    int edge = -1;
    Isometry iso;      ///< neighbor frame -> this frame
    int gluing = -1;   ///< -1 for an internal diagonal
    int sign = 0;      ///< +1 when crossing from the gluing's `from` edge to its `to` edge
};

/// Triangle edge k runs from p[k] to p[k+1]; coordinates are in the owning polygon's frame.
struct Triangle {
    int polygon = 0;
    std::array<int, 3> pv{};  ///< polygon vertex indices
    std::array<Vec2, 3> p;
    std::array<TriLink, 3> nb;
    std::array<int, 3> vclass{};
    std::array<double, 3> angle{};
    std::array<double, 3> offset{};  ///< angular position of the corner's first edge around its vertex
};

/// A triangle corner. The corner at vertex k of a triangle is the half-open sector from the
/// ray towards p[k+1] (included) counterclockwise to the ray towards p[k+2] (excluded).
struct Corner {
    int tri = 0;
    int k = 0;
    auto operator<=>(const Corner&) const = default;
};

struct VertexClass {
    double angle = 0;
    int multiple = 0;
    std::vector<Corner> corners;  ///< counterclockwise order
};

/// Triangulated form of a validated surface. Each polygon is ear-clipped without new vertices.
class Complex {
public:
    static Complex build(const HalfTranslationSurface& surface);

    const std::vector<Triangle>& triangles() const { return tris_; }
    const Triangle& tri(int t) const { return tris_[t]; }
    const std::vector<VertexClass>& vertices() const { return vclasses_; }
    const std::vector<std::vector<int>>& polygon_triangles() const { return poly_tris_; }
    /// Triangle and edge index carrying a polygon edge.
    std::pair<int, int> edge_owner(int polygon, int edge) const { return edge_owner_[polygon][edge]; }
    const Rational& scale2() const { return scale2_; }
    double scale() const { return scale_; }

    Corner ccw_next(Corner c) const;
    Corner cw_next(Corner c) const;
    /// Vertex class of a corner.
    int vertex_of(Corner c) const { return tris_[c.tri].vclass[c.k]; }
    /// True if direction d (triangle frame) lies in the half-open sector of c.
    bool in_corner(Corner c, const Vec2& d) const;
    /// Angular position of direction d from corner c around its vertex, in [0, cone angle).
    double ray_position(Corner c, const Vec2& d) const;
    /// Corner of triangle t at the point p (a vertex of t), or -1.
    int corner_at(int t, const Vec2& p) const;

    /// Path of triangle steps (tri, exit edge) inside one polygon, from triangle a to triangle b.
    std::vector<std::pair<int, int>> polygon_path(int a, int b) const;

private:
    std::vector<Triangle> tris_;
    std::vector<VertexClass> vclasses_;
    std::vector<std::vector<int>> poly_tris_;
    std::vector<std::vector<std::pair<int, int>>> edge_owner_;
    Rational scale2_{1};
    double scale_ = 1;
};

}  // namespace halfflat
