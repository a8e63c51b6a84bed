#include "halfflat/surface.hpp"

#include "halfflat/complex.hpp"
#include "halfflat/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

namespace halfflat {

using nlohmann::json;

HalfTranslationSurface::HalfTranslationSurface(std::string name, std::vector<Polygon> polygons,
                                               std::vector<Gluing> gluings, Rational scale2)
    : name_(std::move(name)), polygons_(std::move(polygons)), gluings_(std::move(gluings)),
      scale2_(std::move(scale2)) {}

Vec2 HalfTranslationSurface::edge_vector(EdgeRef e) const {
    const auto& poly = polygons_.at(e.polygon);
    const int n = static_cast<int>(poly.size());
    return poly[(e.edge + 1) % n] - poly[e.edge];
}

Isometry HalfTranslationSurface::gluing_map(int g) const {
    const Gluing& gl = gluings_.at(g);
    const auto& pf = polygons_[gl.from.polygon];
    const auto& pt = polygons_[gl.to.polygon];
    const Vec2& a = pf[gl.from.edge];
    const Vec2& b_end = pt[(gl.to.edge + 1) % pt.size()];
    if (gl.map == GluingMap::translation) return {1, a - b_end};
    return {-1, a + b_end};
}

const Complex& HalfTranslationSurface::complex() const {
    std::lock_guard lock(cache_->mutex);
    if (!cache_->complex) cache_->complex = std::make_shared<const Complex>(Complex::build(*this));
    return *cache_->complex;
}

bool HalfTranslationSurface::same_combinatorics(const HalfTranslationSurface& other) const {
    if (polygons_.size() != other.polygons_.size() || gluings_.size() != other.gluings_.size())
        return false;
    for (std::size_t i = 0; i < polygons_.size(); ++i)
        if (polygons_[i].size() != other.polygons_[i].size()) return false;
    for (std::size_t g = 0; g < gluings_.size(); ++g) {
        const auto& a = gluings_[g];
        const auto& b = other.gluings_[g];
        if (a.from != b.from || a.to != b.to || a.map != b.map) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// LinearDeformation

LinearDeformation::LinearDeformation(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    for (Rational* r : {&a_, &b_, &c_, &d_}) r->canonicalize();
    if (determinant() != 1) throw InvalidSurface("linear deformation must have determinant 1");
}

LinearDeformation LinearDeformation::from_doubles(double a, double b, double c, double d) {
    if (std::abs(a * d - b * c - 1.0) > 1e-12)
        throw InvalidSurface("linear deformation must have determinant 1");
    LinearDeformation m = identity();
    m.a_ = rational_from_double(a);
    m.b_ = rational_from_double(b);
    m.c_ = rational_from_double(c);
    m.d_ = rational_from_double(d);
    m.exact_ = false;
    return m;
}

LinearDeformation LinearDeformation::rotation(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return from_doubles(c, -s, s, c);
}

double LinearDeformation::sigma_max() const {
    const double a = a_.get_d(), b = b_.get_d(), c = c_.get_d(), d = d_.get_d();
    const double fro2 = a * a + b * b + c * c + d * d;
    const double det = a * d - b * c;
    // sigma_max^2 + sigma_min^2 = |A|_F^2 and sigma_max * sigma_min = |det|
    const double disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4 * det * det));
    return std::sqrt((fro2 + disc) / 2);
}

double LinearDeformation::sigma_min() const {
    return std::abs(determinant().get_d()) / sigma_max();
}

LinearDeformation LinearDeformation::inverse() const {
    LinearDeformation m = *this;
    const Rational det = determinant();
    m.a_ = d_ / det;
    m.b_ = -b_ / det;
    m.c_ = -c_ / det;
    m.d_ = a_ / det;
    return m;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::size_t line_of(const std::string& doc, std::size_t byte) {
    return 1 + static_cast<std::size_t>(std::count(doc.begin(), doc.begin() + std::min(byte, doc.size()), '\n'));
}

Rational rational_field(const json& j, const std::string& where) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected rational string");
}

int int_field(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where + ": expected integer");
    return j.get<int>();
}

}  // namespace

HalfTranslationSurface load_surface(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError("line " + std::to_string(line_of(document, e.byte)) + ": " + e.what());
    }
    if (!doc.is_object()) throw ParseError("top level: expected object");
    std::string name = doc.value("name", std::string{});
    if (!doc.contains("polygons") || !doc["polygons"].is_array()) throw ParseError("polygons: missing list");
    if (!doc.contains("gluings") || !doc["gluings"].is_array()) throw ParseError("gluings: missing list");

    std::vector<Polygon> polygons;
    for (std::size_t i = 0; i < doc["polygons"].size(); ++i) {
        const json& jp = doc["polygons"][i];
        const std::string where = "polygons[" + std::to_string(i) + "]";
        if (!jp.is_array()) throw ParseError(where + ": expected vertex list");
        Polygon poly;
        for (std::size_t k = 0; k < jp.size(); ++k) {
            const std::string vw = where + "[" + std::to_string(k) + "]";
            if (!jp[k].is_array() || jp[k].size() != 2) throw ParseError(vw + ": expected [x, y]");
            poly.emplace_back(rational_field(jp[k][0], vw + "[0]"), rational_field(jp[k][1], vw + "[1]"));
        }
        polygons.push_back(std::move(poly));
    }

    std::vector<Gluing> gluings;
    for (std::size_t i = 0; i < doc["gluings"].size(); ++i) {
        const json& jg = doc["gluings"][i];
        const std::string where = "gluings[" + std::to_string(i) + "]";
        if (!jg.is_object()) throw ParseError(where + ": expected object");
        Gluing g;
        for (const char* side : {"from", "to"}) {
            const std::string sw = where + "." + side;
            if (!jg.contains(side) || !jg[side].is_array() || jg[side].size() != 2)
                throw ParseError(sw + ": expected [poly_index, edge_index]");
            EdgeRef e{int_field(jg[side][0], sw + "[0]"), int_field(jg[side][1], sw + "[1]")};
            (std::string(side) == "from" ? g.from : g.to) = e;
        }
        const std::string map = jg.value("map", std::string{"translation"});
        if (map == "translation")
            g.map = GluingMap::translation;
        else if (map == "rotation_pi")
            g.map = GluingMap::rotation_pi;
        else
            throw ParseError(where + ".map: unknown map '" + map + "'");
        gluings.push_back(g);
    }

    Rational scale2 = 1;
    if (doc.contains("scale2")) scale2 = rational_field(doc["scale2"], "scale2");
    if (scale2 <= 0) throw ParseError("scale2: must be positive");
    return HalfTranslationSurface(std::move(name), std::move(polygons), std::move(gluings), scale2);
}

std::string serialize(const HalfTranslationSurface& surface) {
    std::vector<Gluing> gl = surface.gluings();
    for (auto& g : gl)
        if (g.to < g.from) std::swap(g.from, g.to);
    std::sort(gl.begin(), gl.end(), [](const Gluing& a, const Gluing& b) { return a.from < b.from; });

    std::ostringstream out;
    out << "{\n  \"name\": " << json(surface.name()).dump() << ",\n  \"polygons\": [";
    const auto& polys = surface.polygons();
    for (std::size_t i = 0; i < polys.size(); ++i) {
        out << (i ? ",\n    [" : "\n    [");
        for (std::size_t k = 0; k < polys[i].size(); ++k) {
            out << (k ? ", " : "") << "[\"" << format_rational(polys[i][k].x) << "\", \""
                << format_rational(polys[i][k].y) << "\"]";
        }
        out << "]";
    }
    out << "\n  ],\n  \"gluings\": [";
    for (std::size_t i = 0; i < gl.size(); ++i) {
        out << (i ? ",\n    " : "\n    ") << "{\"from\": [" << gl[i].from.polygon << ", " << gl[i].from.edge
            << "], \"to\": [" << gl[i].to.polygon << ", " << gl[i].to.edge << "], \"map\": \""
            << (gl[i].map == GluingMap::translation ? "translation" : "rotation_pi") << "\"}";
    }
    out << "\n  ]";
    if (surface.scale2() != 1) out << ",\n  \"scale2\": \"" << format_rational(surface.scale2()) << "\"";
    out << "\n}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Validation

namespace {

Rational raw_area(const Polygon& poly) {
    Rational twice = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) twice += cross(poly[i], poly[(i + 1) % poly.size()]);
    return twice / 2;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    if (orient(a, b, p) != 0) return false;
    return dot(p - a, p - b) <= 0;
}

bool segments_touch(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b);
}

double corner_angle(const Polygon& poly, std::size_t i) {
    const std::size_t n = poly.size();
    const Vec2 out = poly[(i + 1) % n] - poly[i];
    const Vec2 in = poly[(i + n - 1) % n] - poly[i];
    double a = std::atan2(cross(out, in).get_d(), dot(out, in).get_d());
    if (a <= 0) a += 2 * std::numbers::pi;
    return a;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

ValidationReport validate(const HalfTranslationSurface& surface) {
    ValidationReport report;
    const auto& polys = surface.polygons();
    const auto& gluings = surface.gluings();
    auto fail = [&](std::string msg) { report.diagnostics.push_back(std::move(msg)); };

    if (polys.empty()) fail("no polygons");
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const Polygon& p = polys[i];
        const std::string tag = "polygon " + std::to_string(i);
        if (p.size() < 3) {
            fail(tag + ": fewer than 3 vertices");
            continue;
        }
        if (raw_area(p) <= 0) fail(tag + ": not counterclockwise");
        const std::size_t n = p.size();
        for (std::size_t e = 0; e < n; ++e)
            if (p[e] == p[(e + 1) % n]) fail(tag + ": zero-length edge " + std::to_string(e));
        for (std::size_t e = 0; e < n; ++e) {
            for (std::size_t f = e + 1; f < n; ++f) {
                const bool adjacent = f == e + 1 || (e == 0 && f == n - 1);
                const Vec2 &a = p[e], &b = p[(e + 1) % n], &c = p[f], &d = p[(f + 1) % n];
                if (adjacent) {
                    // adjacent edges may only share their common vertex
                    const Vec2& shared = (f == e + 1) ? b : a;
                    const Vec2& other_e = (f == e + 1) ? a : b;
                    const Vec2& other_f = (f == e + 1) ? d : c;
                    if (orient(other_e, shared, other_f) == 0 && dot(other_e - shared, other_f - shared) > 0)
                        fail(tag + ": edges " + std::to_string(e) + " and " + std::to_string(f) + " overlap");
                } else if (segments_touch(a, b, c, d)) {
                    fail(tag + ": edges " + std::to_string(e) + " and " + std::to_string(f) + " intersect");
                }
            }
        }
    }
    if (!report.diagnostics.empty()) return report;

    std::vector<int> base(polys.size() + 1, 0);
    for (std::size_t i = 0; i < polys.size(); ++i) base[i + 1] = base[i] + static_cast<int>(polys[i].size());
    std::vector<int> used(base.back(), -1);
    for (std::size_t g = 0; g < gluings.size(); ++g) {
        for (EdgeRef e : {gluings[g].from, gluings[g].to}) {
            if (e.polygon < 0 || e.polygon >= static_cast<int>(polys.size()) || e.edge < 0 ||
                e.edge >= static_cast<int>(polys[e.polygon].size())) {
                fail("gluing " + std::to_string(g) + ": edge reference out of range");
                return report;
            }
            int& slot = used[base[e.polygon] + e.edge];
            if (slot >= 0) fail("edge (" + std::to_string(e.polygon) + "," + std::to_string(e.edge) +
                                ") appears in more than one gluing");
            slot = static_cast<int>(g);
        }
        const Vec2 v = surface.edge_vector(gluings[g].from);
        const Vec2 w = surface.edge_vector(gluings[g].to);
        const bool matches = gluings[g].map == GluingMap::translation ? (w == -v) : (w == v);
        if (!matches) fail("gluing " + std::to_string(g) + ": holonomy mismatch");
    }
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t e = 0; e < polys[i].size(); ++e)
            if (used[base[i] + e] < 0)
                fail("edge (" + std::to_string(i) + "," + std::to_string(e) + ") is unglued (boundary)");
    if (!report.diagnostics.empty()) return report;

    UnionFind uf(base.back());
    for (const Gluing& g : gluings) {
        const int nf = static_cast<int>(polys[g.from.polygon].size());
        const int nt = static_cast<int>(polys[g.to.polygon].size());
        // start of `from` <-> end of `to`, end of `from` <-> start of `to`
        uf.unite(base[g.from.polygon] + g.from.edge, base[g.to.polygon] + (g.to.edge + 1) % nt);
        uf.unite(base[g.from.polygon] + (g.from.edge + 1) % nf, base[g.to.polygon] + g.to.edge);
    }
    std::map<int, int> class_index;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        for (std::size_t k = 0; k < polys[i].size(); ++k) {
            const int root = uf.find(base[i] + static_cast<int>(k));
            auto [it, inserted] = class_index.emplace(root, static_cast<int>(report.cone_points.size()));
            if (inserted) report.cone_points.push_back(ConePoint{it->second, 0, 0, {}});
            ConePoint& cp = report.cone_points[it->second];
            cp.angle += corner_angle(polys[i], k);
            cp.corners.emplace_back(static_cast<int>(i), static_cast<int>(k));
        }
    }

    const int V = static_cast<int>(report.cone_points.size());
    const int E = static_cast<int>(gluings.size());
    const int F = static_cast<int>(polys.size());
    const int chi = V - E + F;
    if (chi > 2 || chi % 2 != 0) {
        fail("Euler characteristic " + std::to_string(chi) + " is not that of a closed orientable surface");
        return report;
    }
    report.genus = (2 - chi) / 2;

    int excess_multiples = 0;
    for (ConePoint& cp : report.cone_points) {
        const double m = cp.angle / std::numbers::pi;
        cp.multiple = static_cast<int>(std::lround(m));
        if (std::abs(m - cp.multiple) >= 1e-9)
            fail("cone point " + std::to_string(cp.id) + ": angle is not a multiple of pi");
        else if (cp.multiple < 2)
            fail("cone point " + std::to_string(cp.id) + ": angle below 2pi");
        else if (cp.multiple == 2)
            report.warnings.push_back("cone point " + std::to_string(cp.id) + " is a marked regular point");
        excess_multiples += cp.multiple - 2;
    }
    if (report.diagnostics.empty() && excess_multiples != 2 * (2 * report.genus - 2))
        fail("Gauss-Bonnet violated: total excess " + std::to_string(excess_multiples) + "pi");

    for (const Polygon& p : polys) report.area += raw_area(p);
    report.area *= surface.scale2();
    report.ok = report.diagnostics.empty();
    return report;
}

Rational area(const HalfTranslationSurface& surface) {
    const ValidationReport r = validate(surface);
    if (!r.ok) throw InvalidSurface(r.diagnostics.front());
    return r.area;
}

HalfTranslationSurface apply_linear(const HalfTranslationSurface& surface, const LinearDeformation& A) {
    const ValidationReport r = validate(surface);
    if (!r.ok) throw InvalidSurface(r.diagnostics.front());
    std::vector<Polygon> polys = surface.polygons();
    for (Polygon& p : polys)
        for (Vec2& v : p) v = A.apply(v);
    return HalfTranslationSurface(surface.name(), std::move(polys), surface.gluings(), surface.scale2());
}

HalfTranslationSurface normalize_area(const HalfTranslationSurface& surface) {
    const Rational a = area(surface);
    if (a <= 0) throw InvalidSurface("area must be positive");
    return HalfTranslationSurface(surface.name(), surface.polygons(), surface.gluings(), surface.scale2() / a);
}

}  // namespace halfflat
