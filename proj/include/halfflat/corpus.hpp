#pragma once

#include "halfflat/surface.hpp"

#include <string>

namespace halfflat {

/// Rational stand-in for 1/sqrt(2), accurate to about 1e-15.
Rational inv_sqrt2();

HalfTranslationSurface make_torus();
/// Three unit squares in an L; one cone point of angle 6pi.
HalfTranslationSurface make_lshape();
/// Two squares of side inv_sqrt2() whose horizontal sides are cut into pieces I..IV,
/// with |II| = |IV| = s and |I| = |III| = inv_sqrt2() - s. Throws ConstraintFailure unless 0 < s < inv_sqrt2().
HalfTranslationSurface make_genus2(const Rational& s);

/// Builds a corpus surface from "torus", "lshape" or "genus2:a=<rational>".
HalfTranslationSurface corpus(const std::string& spec);

}  // namespace halfflat
