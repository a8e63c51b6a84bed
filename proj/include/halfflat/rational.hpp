#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace halfflat {

using Rational = mpq_class;

/// Parses "p/q" or "p" (optional sign). Throws ParseError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

/// Exact conversion of a finite double.
Rational rational_from_double(double x);

/// n/d in lowest terms.
inline Rational make_rational(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline int sign(const Rational& r) { return sgn(r); }

struct Vec2 {
    Rational x;
    Rational y;

    Vec2() = default;
    Vec2(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {
        x.canonicalize();
        y.canonicalize();
    }
    Vec2(long x_, long y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(const Rational& s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Vec2& o) const { return !(*this == o); }

    Rational norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2().get_d()); }
    double dx() const { return x.get_d(); }
    double dy() const { return y.get_d(); }
};

inline Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// Sign of the turn a -> b -> c: +1 left, -1 right, 0 collinear.
inline int orient(const Vec2& a, const Vec2& b, const Vec2& c) { return sgn(cross(b - a, c - a)); }

/// Lexicographic order on (x, y).
inline bool lex_less(const Vec2& a, const Vec2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

/// Unsigned angle in [0, pi] between two nonzero vectors.
inline double angle_between(const Vec2& a, const Vec2& b) {
    return std::atan2(std::abs(cross(a, b).get_d()), dot(a, b).get_d());
}

/// Half-translation transition map x -> eps * x + t with eps = +-1.
struct Isometry {
    int eps = 1;
    Vec2 t{0, 0};

    Vec2 apply(const Vec2& p) const { return (eps > 0 ? p : -p) + t; }
    Vec2 apply_linear(const Vec2& v) const { return eps > 0 ? v : -v; }

    /// (this * other)(x) = this(other(x))
    Isometry operator*(const Isometry& other) const {
        return {eps * other.eps, apply_linear(other.t) + t};
    }
    Isometry inverse() const { return {eps, -(eps > 0 ? t : -t)}; }
    bool is_identity() const { return eps == 1 && t.x == 0 && t.y == 0; }
    bool operator==(const Isometry& o) const { return eps == o.eps && t == o.t; }
};

}  // namespace halfflat
