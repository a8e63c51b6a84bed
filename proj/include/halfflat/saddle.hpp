#pragma once

#include "halfflat/geometry.hpp"

#include <cstdint>
#include <vector>

namespace halfflat {

struct SaddleConnection {
    int src = 0;             ///< source vertex class
    Corner src_corner;       ///< outgoing sector
    int dst = 0;             ///< target vertex class
    Corner dst_corner;       ///< corner of the last triangle, at the target
    Vec2 local;              ///< holonomy in the frame of src_corner's triangle
    Vec2 holonomy;           ///< canonical sign
    Rational len2;           ///< metric squared length
    Direction direction;

    double length() const { return std::sqrt(len2.get_d()); }
};

struct SaddleOptions {
    std::int64_t budget = 10'000'000;  ///< maximum developed triangles
};

/// All saddle connections of metric length at most L, each unoriented connection once,
/// sorted by (squared length, holonomy, endpoints).
std::vector<SaddleConnection> saddle_connections(const HalfTranslationSurface& surface, double L,
                                                 const SaddleOptions& options = {});

/// Triangle steps (triangle, exit edge) crossed by the straight segment leaving corner c with holonomy h
/// (c's frame), and the corner where it ends. Throws InternalError if the segment meets a vertex early.
struct SegmentPath {
    std::vector<std::pair<int, int>> steps;
    Corner end;
};
SegmentPath saddle_path(const Complex& cx, Corner c, const Vec2& h);

/// "len2_num,len2_den,dx,dy,src,dst" rows with a header line.
std::string saddle_csv(const std::vector<SaddleConnection>& list);

}  // namespace halfflat
