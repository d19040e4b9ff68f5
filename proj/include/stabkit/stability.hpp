#pragma once

#include <array>

#include "stabkit/ratfunc.hpp"

namespace stabkit {

struct StabReport {
  bool stable = false;
  Divisor offending_poles;
  Divisor marginal;
};

/// Outcome of the internal-stabilization definition for a plant/controller
/// pair. `marginal` collects roots any check found inside the boundary band;
/// they never count towards `ok`.
struct InternalStabReport {
  bool ok = false;
  Divisor loop_zeros_in_region;   // zeros of 1 - cp
  Divisor cancellation_cp;        // poles of c on zeros of p
  Divisor cancellation_pc;        // zeros of c on poles of p
  std::array<bool, 4> gang_of_four_stable{};
  Divisor marginal;
};

StabReport is_stable(const RatFunc& p, const RegionSpec& region);

/// p / (1 - cp). Throws DegenerateLoop when cp == 1.
RatFunc closed_loop(const RatFunc& p, const RatFunc& c);

/// pc/(1-pc), c/(1-pc), p/(1-pc), 1/(1-pc), in that order.
std::array<RatFunc, 4> gang_of_four(const RatFunc& p, const RatFunc& c);

InternalStabReport internal_check(const RatFunc& p, const RatFunc& c, const RegionSpec& region);

struct AvoidanceReport {
  bool avoids = false;
  Divisor equality_in_region;
  Divisor marginal;
};

/// Points of the region where c and q agree as sphere-valued functions:
/// roots of num_c den_q - num_q den_c, which already include shared poles.
/// Throws IdenticalFunctions when c == q.
AvoidanceReport avoidance_report(const RatFunc& c, const RatFunc& q, const RegionSpec& region);
bool avoids(const RatFunc& c, const RatFunc& q, const RegionSpec& region);

/// Parity interlacing on the positive real axis: between every two adjacent
/// real positive zeros (plus the zero at infinity of a proper plant) the pole
/// count, with multiplicity, is even. Throws MarginalRoot on ordering
/// ambiguity or roots in the band around the origin.
bool pip_check(const RatFunc& p, bool infinity_is_zero = true);

/// Existence of a stable real stabilizer in the right half-plane.
inline bool strongly_stabilizable(const RatFunc& p, bool infinity_is_zero = true) {
  return pip_check(p, infinity_is_zero);
}

}  // namespace stabkit
