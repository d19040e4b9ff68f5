#pragma once

#include <utility>
#include <vector>

#include "stabkit/ratfunc.hpp"

namespace stabkit {

/// Three pairwise distinct rational functions with no point that is a pole
/// of all three. All avoidance work happens in the open unit disc.
struct AvoidanceTriple {
  RatFunc phi1;
  RatFunc phi2;
  RatFunc phi3;

  /// Throws InvalidTriple.
  void validate() const;
};

/// Condition at a triple intersection a: g * ratio - 1 vanishes to order
/// `order` at a, where ratio = (phi3 - phi1)/(phi3 - phi2).
struct Jet {
  cplx point;
  int order = 0;
  RatFunc ratio;
};

struct InterpolationData {
  Divisor zeros_divisor;  // zeros of phi3 - phi2 in D
  Divisor poles_divisor;  // zeros of phi3 - phi1 in D
  Divisor ones_divisor;   // zeros of phi1 - phi2 in D
  std::vector<Jet> jets;
  // Roots of the three differences lying on the unit circle (within the
  // boundary band). They are not in D and take no part in the divisors.
  Divisor boundary;
};

/// E = {z in D : phi1 = phi2 = phi3}. Throws MarginalRoot when a triple
/// intersection sits in the boundary band.
std::vector<cplx> triple_intersections(const AvoidanceTriple& t);

InterpolationData interpolation_data(const AvoidanceTriple& t);

/// g = (f - phi1)(phi3 - phi2) / ((f - phi2)(phi3 - phi1)).
/// Throws DegenerateCrossRatio when f is phi1 or phi2.
RatFunc cross_ratio_fg(const RatFunc& f, const AvoidanceTriple& t);

/// The f with cross_ratio_fg(f, t) == g, from
/// f = (phi2 A - phi1 B) / (A - B), A = g (phi3 - phi1), B = phi3 - phi2.
RatFunc inverse_cross_ratio(const RatFunc& g, const AvoidanceTriple& t);

/// Checks g against the interpolation data. Divisors are compared as signed
/// divisors (zeros minus poles) so that orders cancelling at triple
/// intersections are accounted for; with E empty this is plain equality of
/// the zero, pole and one divisors. Each jet is checked through the Taylor
/// coefficients of g * ratio - 1 at its point.
bool verify_g(const RatFunc& g, const InterpolationData& data);

/// f avoids each phi_i in the region.
bool verify_avoidance(const RatFunc& f, const AvoidanceTriple& t, const RegionSpec& region);

struct GoldbergClasses {
  bool F0 = false;
  bool F1 = false;
  bool F2 = false;
  bool F3 = false;
  bool F4 = false;
};

struct GoldbergProfile {
  double rho = 0.0;
  int n_zeros = 0;
  int n_poles = 0;
  int n_ones = 0;
  int N0 = 0;  // winding of gamma(f) about 0
  int N1 = 0;  // winding of gamma(f) about 1
  GoldbergClasses classes;

  /// Radius of the circle gamma(f) is traced on.
  double gamma_radius() const { return 0.5 * (1.0 + rho); }
};

/// Preimages of {0, 1, inf} in D, their counts, the windings of gamma(f) by
/// the argument principle, and class membership for a rational f.
/// Throws ConstantFunction and PreimageOnBoundary.
GoldbergProfile goldberg_profile(const RatFunc& f);

/// Winding number of t -> f(r e^{it}) - value about 0, by accumulating the
/// phase increments over `samples` equispaced points.
int sampled_winding(const RatFunc& f, cplx value, double radius, int samples = 4096);

/// Distance from the circle |z| = radius to the nearest preimage of 0, 1 or
/// inf anywhere in the plane.
double preimage_clearance(const RatFunc& f, double radius);

}  // namespace stabkit
