#pragma once

#include "halfflat/curves.hpp"

namespace halfflat {

/// Transverse measure of a geodesic for the foliation by lines of angle theta: sum of l_k |sin(theta - theta_k)|.
double foliation_curve_pairing(double theta, const FlatGeodesic& geodesic);

/// Midpoint Riemann sum of the Liouville pairing with N samples of [0, pi).
double liouville_curve_pairing(const FlatGeodesic& geodesic, int N);

/// Riemann sum of the Liouville self-intersection, using i(F_a, F_b) = |sin(a - b)| area.
double liouville_self_intersection(const HalfTranslationSurface& surface, int N);

/// Compensated (Kahan) sum in the given order.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0;
    double c_ = 0;
};

}  // namespace halfflat
