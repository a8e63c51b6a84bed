#include "halfflat/foliation.hpp"

#include "halfflat/errors.hpp"
#include "halfflat/parallel.hpp"

#include <cmath>
#include <numbers>

namespace halfflat {

double foliation_curve_pairing(double theta, const FlatGeodesic& geodesic) {
    KahanSum s;
    for (const GeodesicSegment& seg : geodesic.segments) s.add(seg.length * std::abs(std::sin(theta - seg.theta)));
    return s.value();
}

double liouville_curve_pairing(const FlatGeodesic& geodesic, int N) {
    if (N < 1) throw ConstraintFailure("sample count must be positive");
    std::vector<double> values(N);
    parallel_for(static_cast<std::size_t>(N), [&](std::size_t j) {
        const double theta = (static_cast<double>(j) + 0.5) * std::numbers::pi / N;
        values[j] = foliation_curve_pairing(theta, geodesic);
    });
    KahanSum s;
    for (double v : values) s.add(v);
    return std::numbers::pi / (2.0 * N) * s.value();
}

double liouville_self_intersection(const HalfTranslationSurface& surface, int N) {
    if (N < 1) throw ConstraintFailure("sample count must be positive");
    // the double sum depends only on j - k; difference d occurs 2 (N - d) times for d > 0
    KahanSum s;
    for (int d = 1; d < N; ++d) s.add(2.0 * (N - d) * std::abs(std::sin(d * std::numbers::pi / N)));
    const double h = std::numbers::pi / (2.0 * N);
    return h * h * s.value() * area(surface).get_d() * surface.scale2().get_d();
}

}  // namespace halfflat
