#pragma once

#include <string>

#include "stabkit/poly.hpp"

namespace stabkit {

struct ConstantsTable {
  double A0;             // exp(-pi^2 / log(3 + 2 sqrt 2))
  double A2_lower;       // 0.00587465
  double A2_upper_mu;    // mu, 0.0252896
  double bermant_delta0; // 8 pi^2 / Gamma(1/4)^4
  double caratheodory;   // 1/16
  double chocolate_lower;
  double chocolate_upper;
};

/// A0 and bermant_delta0 are computed; the rest are published values.
const ConstantsTable& constants();

enum class Status { Stabilizable, NotStabilizable, Unknown };
std::string to_string(Status s);

struct Verdict {
  Status status;
  double threshold;
  std::string citation;
};

/// p1 = z^2/(z - delta), p2 = z^2/(z + delta), p3 = 0.
/// Stabilizable iff delta > 8 pi^2 / Gamma(1/4)^4.
Verdict blondel_example_decision(double delta);

/// p1 = z, p2 = z^2/(z - a), p3 = 0. Stabilizable iff a > 1/16.
Verdict patel_example_decision(double a);

/// Bistable controller for the family with parameter a in D: iff |a| > mu.
Verdict bistable_example_decision(cplx a);

/// Two simple 1-points at +-i delta. Only bounds are known, so the gap
/// between them answers Unknown.
Verdict chocolate_decision(double delta);

}  // namespace stabkit
