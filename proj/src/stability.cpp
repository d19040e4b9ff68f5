#include "stabkit/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stabkit/errors.hpp"

namespace stabkit {

namespace {

void append(Divisor& into, const Divisor& from) {
  into.entries.insert(into.entries.end(), from.entries.begin(), from.entries.end());
}

bool same_point(cplx a, cplx b) { return std::abs(a - b) <= tol::kCluster * (1.0 + std::abs(a)); }

// In-region points shared by two root sets, with the smaller multiplicity.
void coincidences(const RegionRoots& a, const RegionRoots& b, Divisor& hits, Divisor& marginal) {
  auto scan = [&](const Divisor& from, Divisor& into) {
    for (const auto& x : from.entries) {
      for (const auto* pool : {&b.inside, &b.marginal}) {
        for (const auto& y : pool->entries) {
          if (!same_point(x.point, y.point)) continue;
          const int m = std::min(x.multiplicity, y.multiplicity);
          (pool == &b.marginal ? marginal : into).entries.push_back({x.point, m});
        }
      }
    }
  };
  scan(a.inside, hits);
  scan(a.marginal, marginal);
}

RatFunc loop_sensitivity_inverse(const RatFunc& p, const RatFunc& c) {
  RatFunc s = RatFunc(1.0) - c * p;
  if (s.is_zero()) throw Error(ErrorKind::DegenerateLoop, "cp is identically 1");
  return s;
}

}  // namespace

StabReport is_stable(const RatFunc& p, const RegionSpec& region) {
  auto split = roots_in(p.den(), region);
  StabReport r;
  r.offending_poles = std::move(split.inside);
  r.marginal = std::move(split.marginal);
  r.stable = r.offending_poles.empty() && r.marginal.empty();
  return r;
}

RatFunc closed_loop(const RatFunc& p, const RatFunc& c) { return p / loop_sensitivity_inverse(p, c); }

std::array<RatFunc, 4> gang_of_four(const RatFunc& p, const RatFunc& c) {
  const RatFunc s = loop_sensitivity_inverse(p, c);
  return {p * c / s, c / s, p / s, RatFunc(1.0) / s};
}

InternalStabReport internal_check(const RatFunc& p, const RatFunc& c, const RegionSpec& region) {
  const RatFunc s = loop_sensitivity_inverse(p, c);
  InternalStabReport rep;

  auto loop = roots_in(s.num(), region);
  rep.loop_zeros_in_region = std::move(loop.inside);
  append(rep.marginal, loop.marginal);

  const auto c_poles = roots_in(c.den(), region);
  const auto p_poles = roots_in(p.den(), region);
  // An identically zero factor vanishes at every pole of the other one.
  if (p.is_zero()) {
    rep.cancellation_cp = c_poles.inside;
    append(rep.marginal, c_poles.marginal);
  } else {
    coincidences(c_poles, roots_in(p.num(), region), rep.cancellation_cp, rep.marginal);
  }
  if (c.is_zero()) {
    rep.cancellation_pc = p_poles.inside;
    append(rep.marginal, p_poles.marginal);
  } else {
    coincidences(roots_in(c.num(), region), p_poles, rep.cancellation_pc, rep.marginal);
  }

  const auto four = gang_of_four(p, c);
  for (std::size_t i = 0; i < four.size(); ++i) {
    const auto r = is_stable(four[i], region);
    rep.gang_of_four_stable[i] = r.stable;
    append(rep.marginal, r.marginal);
  }

  rep.ok = rep.loop_zeros_in_region.empty() && rep.cancellation_cp.empty() && rep.cancellation_pc.empty();
  return rep;
}

AvoidanceReport avoidance_report(const RatFunc& c, const RatFunc& q, const RegionSpec& region) {
  const Poly cross = c.num() * q.den() - q.num() * c.den();
  if (cross.is_zero()) throw Error(ErrorKind::IdenticalFunctions, "the two functions coincide");
  auto split = roots_in(cross, region);
  AvoidanceReport rep;
  rep.avoids = split.inside.empty();
  rep.equality_in_region = std::move(split.inside);
  rep.marginal = std::move(split.marginal);
  return rep;
}

bool avoids(const RatFunc& c, const RatFunc& q, const RegionSpec& region) {
  return avoidance_report(c, q, region).avoids;
}

bool pip_check(const RatFunc& p, bool infinity_is_zero) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "parity test of the zero function");

  struct AxisPoint {
    double x;
    int multiplicity;
    bool is_zero;
  };
  std::vector<AxisPoint> axis;
  auto collect = [&](const Poly& poly, bool is_zero) {
    if (poly.degree() <= 0) return;
    for (const auto& r : poly_roots(poly).roots) {
      if (r.point.imag() != 0.0) continue;
      const double x = r.point.real();
      if (std::abs(x) <= tol::kBoundaryBand)
        throw Error(ErrorKind::MarginalRoot, "real root at the origin, on the axis boundary");
      if (x > 0.0) axis.push_back({x, r.multiplicity, is_zero});
    }
  };
  collect(p.num(), true);
  collect(p.den(), false);
  if (infinity_is_zero && is_proper(p))
    axis.push_back({std::numeric_limits<double>::infinity(), 1, true});

  std::sort(axis.begin(), axis.end(), [](const AxisPoint& a, const AxisPoint& b) { return a.x < b.x; });
  for (std::size_t i = 1; i < axis.size(); ++i) {
    const auto& a = axis[i - 1];
    const auto& b = axis[i];
    if (a.is_zero != b.is_zero && std::isfinite(b.x) && b.x - a.x <= tol::kCluster * (1.0 + b.x))
      throw Error(ErrorKind::MarginalRoot, "a zero and a pole are too close to order on the axis");
  }

  int poles_since_zero = 0;
  bool seen_zero = false;
  for (const auto& pt : axis) {
    if (!pt.is_zero) {
      poles_since_zero += pt.multiplicity;
      continue;
    }
    if (seen_zero && poles_since_zero % 2 != 0) return false;
    seen_zero = true;
    poles_since_zero = 0;
  }
  return true;
}

}  // namespace stabkit
