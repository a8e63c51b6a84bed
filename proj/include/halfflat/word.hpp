#pragma once

#include <compare>
#include <string>
#include <vector>

namespace halfflat {

class HalfTranslationSurface;

/// One edge crossing. sign = +1 crosses from the gluing's `from` edge into its `to` edge.
struct Crossing {
    int gluing = 0;
    int sign = 1;
    auto operator<=>(const Crossing&) const = default;
    Crossing inverse() const { return {gluing, -sign}; }
};

/// Cyclic word of edge crossings describing a free homotopy class of closed curves.
class CurveWord {
public:
    CurveWord() = default;
    explicit CurveWord(std::vector<Crossing> steps) : steps_(std::move(steps)) {}

    /// Parses "+3,-7,+2"; every id needs an explicit sign.
    static CurveWord parse(const std::string& text);
    std::string to_string() const;

    const std::vector<Crossing>& steps() const { return steps_; }
    std::size_t size() const { return steps_.size(); }
    bool empty() const { return steps_.empty(); }

    CurveWord inverse() const;
    /// Cyclically reduced word: no crossing is followed (cyclically) by its inverse.
    CurveWord reduced() const;
    /// Reduced word rotated to its lexicographically least rotation.
    CurveWord canonical() const;
    /// Canonical form shared by a word and its inverse.
    CurveWord unoriented() const;
    CurveWord power(int n) const;
    CurveWord operator*(const CurveWord& other) const;

    /// Throws IncoherentWord if a crossing does not leave the polygon the previous one entered.
    void check_coherent(const HalfTranslationSurface& surface) const;

    bool operator==(const CurveWord&) const = default;
    auto operator<=>(const CurveWord& o) const { return steps_ <=> o.steps_; }

private:
    std::vector<Crossing> steps_;
};

/// Polygon a crossing leaves and the polygon it enters.
int exit_polygon(const HalfTranslationSurface& surface, Crossing c);
int entry_polygon(const HalfTranslationSurface& surface, Crossing c);

}  // namespace halfflat
