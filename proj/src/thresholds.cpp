#include "stabkit/thresholds.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numbers>

#include "stabkit/errors.hpp"

namespace stabkit {

namespace {

double delta0() {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big g = boost::math::tgamma(big(1) / 4);
  const big pi = boost::math::constants::pi<big>();
  return static_cast<double>(8 * pi * pi / (g * g * g * g));
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw Error(ErrorKind::NonPositiveParameter, std::string(name) + " must be a positive finite number");
}

}  // namespace

const ConstantsTable& constants() {
  static const ConstantsTable table{
      .A0 = std::exp(-std::numbers::pi * std::numbers::pi / std::log(3.0 + 2.0 * std::numbers::sqrt2)),
      .A2_lower = 0.00587465,
      .A2_upper_mu = 0.0252896,
      .bermant_delta0 = delta0(),
      .caratheodory = 1.0 / 16.0,
      .chocolate_lower = 0.01450779,
      .chocolate_upper = 0.1148,
  };
  return table;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Stabilizable: return "Stabilizable";
    case Status::NotStabilizable: return "NotStabilizable";
    case Status::Unknown: return "Unknown";
  }
  return "Unknown";
}

Verdict blondel_example_decision(double delta) {
  require_positive(delta, "delta");
  const double t = constants().bermant_delta0;
  return {delta > t ? Status::Stabilizable : Status::NotStabilizable, t,
          "Bermant: g(0)=0, g'(0)=1, g != +-delta in D iff delta >= 8 pi^2/Gamma(1/4)^4; "
          "the extremal function is not rational, so stabilizable iff delta > delta0 (Blondel example)"};
}

Verdict patel_example_decision(double a) {
  require_positive(a, "a");
  const double t = constants().caratheodory;
  return {a > t ? Status::Stabilizable : Status::NotStabilizable, t,
          "Caratheodory: g != 1, g(0)=0 only at 0, g'(0)=1/a forces a >= 1/16; "
          "the extremal function is not rational, so stabilizable iff a > 1/16 (Patel example)"};
}

Verdict bistable_example_decision(cplx a) {
  if (!(std::abs(a) < 1.0)) throw Error(ErrorKind::OutOfDisc, "a must lie in the open unit disc");
  const double t = constants().A2_upper_mu;
  return {std::abs(a) > t ? Status::Stabilizable : Status::NotStabilizable, t,
          "Bistable controller exists iff |a| > mu ~ 0.0252896 (covering-map constant, printed precision); "
          "at |a| = mu the extremal function is unique and transcendental"};
}

Verdict chocolate_decision(double delta) {
  require_positive(delta, "delta");
  const auto& k = constants();
  if (delta < k.chocolate_lower)
    return {Status::NotStabilizable, k.chocolate_lower,
            "Below the best known lower estimate 0.01450779 (hyperbolic-geodesic bound after Hempel)"};
  if (delta >= k.chocolate_upper)
    return {Status::Stabilizable, k.chocolate_upper,
            "At or above 0.1148, where a stabilizing controller is known (Chang record)"};
  return {Status::Unknown, k.chocolate_upper,
          "Between the lower estimate 0.01450779 (Hempel-geodesic bound) and the record 0.1148 (Chang); open"};
}

}  // namespace stabkit
