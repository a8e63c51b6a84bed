#pragma once

#include "halfflat/rational.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace halfflat {

class Complex;

/// Edge `edge` of polygon `polygon` runs from vertex `edge` to vertex `edge + 1` (counterclockwise).
struct EdgeRef {
    int polygon = 0;
    int edge = 0;
    auto operator<=>(const EdgeRef&) const = default;
};

enum class GluingMap { translation, rotation_pi };

struct Gluing {
    EdgeRef from;
    EdgeRef to;
    GluingMap map = GluingMap::translation;
};

using Polygon = std::vector<Vec2>;

/// A closed surface glued from rational polygons by translations and half-turns.
///
/// Metric lengths are raw plane lengths multiplied by sqrt(scale2()). normalize_area only
/// changes scale2, so coordinates and squared lengths stay exact.
class HalfTranslationSurface {
public:
    HalfTranslationSurface() = default;
    HalfTranslationSurface(std::string name, std::vector<Polygon> polygons,
                           std::vector<Gluing> gluings, Rational scale2 = 1);

    const std::string& name() const { return name_; }
    const std::vector<Polygon>& polygons() const { return polygons_; }
    const std::vector<Gluing>& gluings() const { return gluings_; }
    const Rational& scale2() const { return scale2_; }
    double scale() const { return std::sqrt(scale2_.get_d()); }

    /// Edge vector of polygon edge in raw coordinates.
    Vec2 edge_vector(EdgeRef e) const;
    /// Map carrying edge `to` onto edge `from` of gluing g (start of `from` <-> end of `to`).
    Isometry gluing_map(int g) const;

    /// Triangulated complex, built on first use. Throws InvalidSurface if the surface does not validate.
    const Complex& complex() const;

    /// Same polygon sizes and the same gluing list.
    bool same_combinatorics(const HalfTranslationSurface& other) const;

private:
    std::string name_;
    std::vector<Polygon> polygons_;
    std::vector<Gluing> gluings_;
    Rational scale2_{1};

    struct Cache {
        std::mutex mutex;
        std::shared_ptr<const Complex> complex;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

struct ConePoint {
    int id = 0;
    int multiple = 0;  ///< cone angle = multiple * pi
    double angle = 0;
    std::vector<std::pair<int, int>> corners;  ///< (polygon, vertex)
};

struct ValidationReport {
    bool ok = false;
    int genus = -1;
    std::vector<ConePoint> cone_points;
    Rational area{0};
    std::vector<std::string> diagnostics;
    std::vector<std::string> warnings;
};

/// 2x2 matrix [[a, b], [c, d]] acting on plane coordinates.
class LinearDeformation {
public:
    LinearDeformation(Rational a, Rational b, Rational c, Rational d);
    static LinearDeformation identity() { return {1, 0, 0, 1}; }
    static LinearDeformation diagonal(const Rational& lambda) { return {lambda, 0, 0, 1 / lambda}; }
    /// Entries rounded to doubles and taken exactly; det = 1 only within 1e-12.
    static LinearDeformation from_doubles(double a, double b, double c, double d);
    static LinearDeformation rotation(double angle);

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& c() const { return c_; }
    const Rational& d() const { return d_; }
    bool exact() const { return exact_; }
    Rational determinant() const { return a_ * d_ - b_ * c_; }
    double sigma_max() const;
    double sigma_min() const;
    Vec2 apply(const Vec2& v) const { return {a_ * v.x + b_ * v.y, c_ * v.x + d_ * v.y}; }
    LinearDeformation inverse() const;

private:
    Rational a_, b_, c_, d_;
    bool exact_ = true;
};

HalfTranslationSurface load_surface(const std::string& document);
std::string serialize(const HalfTranslationSurface& surface);

ValidationReport validate(const HalfTranslationSurface& surface);

/// Metric area; exact.
Rational area(const HalfTranslationSurface& surface);

HalfTranslationSurface apply_linear(const HalfTranslationSurface& surface, const LinearDeformation& A);
HalfTranslationSurface normalize_area(const HalfTranslationSurface& surface);

}  // namespace halfflat
