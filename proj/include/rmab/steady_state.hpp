#pragma once

#include <cmath>

#include "rmab/types.hpp"

namespace rmab {

/// Constants of the stationary adherence function written as a Moebius
/// transform f(p) = (c1 + c2 p) / (c3 + c4 p).
struct SteadyStateConstants {
  double c1 = 0;  // p01_passive
  double c2 = 0;  // p01_active - p01_passive
  double c3 = 0;  // 1 - p11_passive + p01_passive
  double c4 = 0;  // p11_passive - p11_active - p01_passive + p01_active
};

enum class CurvatureClass { Concave, StrictlyConvex };

inline SteadyStateConstants constants(const TransitionMatrix& m) {
  SteadyStateConstants c;
  c.c1 = m.p01_passive;
  c.c2 = m.p01_active - m.p01_passive;
  c.c3 = 1 - m.p11_passive + m.p01_passive;
  c.c4 = m.p11_passive - m.p11_active - m.p01_passive + m.p01_active;
  return c;
}

/// Stationary probability of the good state when the arm is pulled i.i.d.
/// with probability p each step. The denominator is positive for every
/// matrix with entries in (0,1), so the value is a well-defined probability.
inline double occupancy(const TransitionMatrix& m, double p) {
  const SteadyStateConstants c = constants(m);
  return (c.c1 + c.c2 * p) / (c.c3 + c.c4 * p);
}

/// d occupancy / dp = (c2 c3 - c1 c4) / (c3 + c4 p)^2. Non-negative for
/// structurally valid arms: (1 - p11_passive) p01_active exceeds
/// (1 - p11_active) p01_passive under constraints (c) and (d).
inline double occupancy_derivative(const TransitionMatrix& m, double p) {
  const SteadyStateConstants c = constants(m);
  const double denom = c.c3 + c.c4 * p;
  return (c.c2 * c.c3 - c.c1 * c.c4) / (denom * denom);
}

/// Curvature of the occupancy function over p in [0,1]. The sign of the
/// second derivative is the sign of c1 - c2 c3 / c4 when c4 and c2 are
/// nonzero; c4 == 0 makes f linear. |c4| below 1e-12 is treated as zero so
/// the c2 c3 / c4 ratio never involves a denormal denominator.
inline CurvatureClass classify(const TransitionMatrix& m) {
  const SteadyStateConstants c = constants(m);
  if (std::abs(c.c4) < 1e-12) return CurvatureClass::Concave;
  if (c.c2 == 0.0) {
    return c.c1 > 0.0 ? CurvatureClass::StrictlyConvex : CurvatureClass::Concave;
  }
  return c.c1 > c.c2 * c.c3 / c.c4 ? CurvatureClass::StrictlyConvex
                                   : CurvatureClass::Concave;
}

inline const char* to_string(CurvatureClass k) {
  return k == CurvatureClass::Concave ? "concave" : "strictly_convex";
}

}  // namespace rmab
