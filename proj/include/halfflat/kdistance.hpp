#pragma once

#include "halfflat/curves.hpp"
#include "halfflat/surface.hpp"

#include <optional>
#include <string>
#include <vector>

namespace halfflat {

/// Two unit-area metrics on the same marked surface.
struct MarkedPair {
    HalfTranslationSurface q1;
    HalfTranslationSurface q2;
    std::optional<LinearDeformation> deformation;  ///< set when q2 = A q1
    std::vector<CurveWord> named;                  ///< curves always added to the candidate pool
};

/// Normalizes both areas. Throws MarkingMismatch unless the combinatorics agree.
MarkedPair make_marked_pair(const HalfTranslationSurface& q1, const HalfTranslationSurface& q2);
/// Pair (q, A q); A must have determinant 1.
MarkedPair make_linear_pair(const HalfTranslationSurface& q, const LinearDeformation& A);
/// Genus-2 family pair (q_a, q_b) with the classes II*IV^-1 and I*III^-1 as named curves.
MarkedPair make_genus2_pair(const Rational& a, const Rational& b);
/// Parses "genus2:a=<p/q>,b=<p/q>".
MarkedPair parse_pair(const std::string& spec);

enum class BoundStatus { lower_bound, exact };
std::string to_string(BoundStatus s);

struct CandidateRow {
    CurveWord word;
    double length1 = 0;
    double length2 = 0;
    double ratio = 0;
};

struct DistanceReport {
    double r = 0;
    double K = 0;
    CurveWord witness;
    std::size_t candidates = 0;
    BoundStatus status = BoundStatus::lower_bound;
    std::vector<CandidateRow> table;  ///< by decreasing ratio, then word
    double witness_ratio = 0;         ///< best ratio among scanned curves (equals r for lower bounds)
};

/// Cylinder curves of both metrics up to L, then the named curves, then `extra`; duplicates removed.
/// Non-simple extras throw NotSimple.
std::vector<CurveWord> candidate_pool(const MarkedPair& pair, double L, const std::vector<CurveWord>& extra = {});
/// Sup of l_q2 / l_q1 over the given pool.
DistanceReport evaluate_pool(const HalfTranslationSurface& q1, const HalfTranslationSurface& q2,
                             const std::vector<CurveWord>& pool);

DistanceReport ratio_lower_bound(const MarkedPair& pair, double L, const std::vector<CurveWord>& extra = {});
/// K = log sigma_max(A). The witness is the most stretched cylinder curve of q up to length L.
DistanceReport k_exact_linear(const HalfTranslationSurface& q, const LinearDeformation& A, double L = 0);

struct AsymmetryReport {
    DistanceReport forward;
    DistanceReport backward;
};
AsymmetryReport asymmetry_report(const MarkedPair& pair, double L, const std::vector<CurveWord>& extra = {});

/// Candidate of largest ratio if it is longer in q2 by more than 1e-9, else nullopt.
std::optional<CurveWord> find_longer_curve(const MarkedPair& pair, double L);

/// Named classes of the genus-2 family surface; the parameter is the length of IV.
CurveWord genus2_II_IVinv(const HalfTranslationSurface& surface, const Rational& s);
CurveWord genus2_I_IIIinv(const HalfTranslationSurface& surface, const Rational& s);

struct Genus2Certificate {
    bool ok = false;
    std::vector<std::string> failures;
};
/// Checks genus 2, unit area, and that the named classes are simple closed geodesics of lengths 2s and 2(r - s).
Genus2Certificate certify_genus2(const HalfTranslationSurface& surface, const Rational& s);

}  // namespace halfflat
