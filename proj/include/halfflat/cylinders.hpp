#pragma once

#include "halfflat/geometry.hpp"
#include "halfflat/word.hpp"

#include <string>
#include <vector>

namespace halfflat {

/// Saddle connection parallel to a decomposition direction, as traced from its start.
struct BoundaryConnection {
    Corner start;
    Vec2 dir;  ///< start corner's frame
    double length = 0;
};

struct Cylinder {
    Direction direction;
    double circumference = 0;
    double height = 0;
    CurveWord core;
    std::vector<int> bottom;  ///< boundary connections with the cylinder on their left
    std::vector<int> top;     ///< boundary connections with the cylinder on their right

    double area() const { return circumference * height; }
};

struct Decomposition {
    Direction direction;
    std::vector<BoundaryConnection> connections;
    std::vector<Cylinder> cylinders;
};

/// 100 times the sum of polygon diameters, in metric units.
double default_cap(const HalfTranslationSurface& surface);

/// Maximal cylinders in direction dir. NotPeriodic if some separatrix is longer than cap.
Decomposition cylinder_decomposition(const HalfTranslationSurface& surface, const Direction& dir, double cap);

struct CylinderCurve {
    CurveWord word;
    double length = 0;
    Direction direction;
};

/// Core curves of length at most L over all directions of saddle connections of length at most L,
/// one per unoriented class, sorted by (length, direction).
std::vector<CylinderCurve> cylinder_curves_up_to(const HalfTranslationSurface& surface, double L);

/// "dirx,diry,circumference,height,word" rows with a header line.
std::string cylinders_csv(const std::vector<Cylinder>& list);

}  // namespace halfflat
