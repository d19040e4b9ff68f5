#include "stabkit/avoidance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "stabkit/errors.hpp"
#include "stabkit/stability.hpp"

namespace stabkit {

namespace {

constexpr double kDivisorMatch = 1e-6;
// Taylor coefficients of g * ratio - 1 below this relative size vanish.
constexpr double kJetTolerance = 1e-8;

const RegionSpec kDisc = RegionSpec::disc();

void append(Divisor& into, const Divisor& from) {
  into.entries.insert(into.entries.end(), from.entries.begin(), from.entries.end());
}

Poly cross(const RatFunc& a, const RatFunc& b) { return a.num() * b.den() - b.num() * a.den(); }

// A polynomial with a running bound on the absolute size of the terms that
// produced each coefficient. Differences zero out coefficients that sit at
// rounding level of that bound, which keeps cancelled leading terms from
// surviving as spurious huge roots.
struct Tracked {
  Poly value;
  Poly bound;
};

Poly abs_poly(const Poly& p) {
  auto c = p.coeffs();
  for (auto& x : c) x = std::abs(x);
  return Poly(std::move(c));
}

Tracked track(const Poly& p) { return {p, abs_poly(p)}; }

Tracked operator*(const Tracked& a, const Tracked& b) { return {a.value * b.value, a.bound * b.bound}; }

Tracked operator-(const Tracked& a, const Tracked& b) {
  const Poly bound = a.bound + b.bound;
  auto c = (a.value - b.value).coeffs();
  const double rel = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(bound.degree() + 2);
  for (std::size_t k = 0; k < c.size(); ++k)
    if (std::abs(c[k]) <= rel * bound[static_cast<int>(k)]) c[k] = 0.0;
  return {Poly(std::move(c)), bound};
}

Tracked cross_tracked(const RatFunc& a, const RatFunc& b) {
  return track(a.num()) * track(b.den()) - track(b.num()) * track(a.den());
}

int multiplicity_at(const Divisor& d, cplx a) {
  for (const auto& e : d.entries)
    if (std::abs(e.point - a) <= kDivisorMatch) return e.multiplicity;
  return 0;
}

// Zeros counted positive, poles negative; coincident points merged and
// cancelled entries dropped.
using Signed = std::vector<std::pair<cplx, int>>;

void add_signed(Signed& s, const Divisor& d, int sign) {
  for (const auto& e : d.entries) {
    auto it = std::find_if(s.begin(), s.end(),
                           [&](const auto& x) { return std::abs(x.first - e.point) <= kDivisorMatch; });
    if (it == s.end())
      s.emplace_back(e.point, sign * e.multiplicity);
    else
      it->second += sign * e.multiplicity;
  }
  std::erase_if(s, [](const auto& x) { return x.second == 0; });
}

bool same_signed(const Signed& a, const Signed& b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    const bool hit = std::any_of(b.begin(), b.end(), [&](const auto& y) {
      return y.second == x.second && std::abs(y.first - x.first) <= kDivisorMatch;
    });
    if (!hit) return false;
  }
  return true;
}

// h = g * ratio - 1 is kept unreduced, (Gn Rn - Gd Rd) / (Gd Rd), so that
// each Taylor coefficient is judged against the size of the terms it came
// from. The jet holds when ord_a(numerator) - ord_a(denominator) >= order.
bool jet_holds(const RatFunc& g, const Jet& jet) {
  const Tracked gn = track(g.num()), gd = track(g.den());
  const Tracked rn = track(jet.ratio.num()), rd = track(jet.ratio.den());
  const Tracked hn = gn * rn - gd * rd;
  const Tracked hd = gd * rd;
  if (hn.value.is_zero()) return true;
  const cplx a = jet.point;
  const double r = std::abs(a);
  auto vanishes = [](int j, const std::vector<cplx>& t, const std::vector<double>& s) {
    return j >= static_cast<int>(t.size()) || std::abs(t[j]) <= kJetTolerance * s[j];
  };
  const auto td = hd.value.taylor_at(a);
  const auto sd = hd.bound.taylor_scale(r);
  int den_order = 0;
  while (den_order < static_cast<int>(td.size()) && vanishes(den_order, td, sd)) ++den_order;
  const auto tn = hn.value.taylor_at(a);
  const auto sn = hn.bound.taylor_scale(r);
  for (int j = 0; j < den_order + jet.order; ++j)
    if (!vanishes(j, tn, sn)) return false;
  return true;
}

}  // namespace

void AvoidanceTriple::validate() const {
  if (phi1 == phi2 || phi1 == phi3 || phi2 == phi3 || cross(phi1, phi2).is_zero() ||
      cross(phi1, phi3).is_zero() || cross(phi2, phi3).is_zero())
    throw Error(ErrorKind::InvalidTriple, "the three functions must be pairwise distinct");
  if (phi1.den().degree() <= 0 || phi2.den().degree() <= 0 || phi3.den().degree() <= 0) return;
  const Poly g12 = poly_gcd(phi1.den(), phi2.den());
  if (g12.degree() > 0 && poly_gcd(g12, phi3.den()).degree() > 0)
    throw Error(ErrorKind::InvalidTriple, "the three functions share a pole");
}

std::vector<cplx> triple_intersections(const AvoidanceTriple& t) {
  t.validate();
  const auto r12 = roots_in(cross(t.phi1, t.phi2), kDisc);
  const auto r13 = roots_in(cross(t.phi1, t.phi3), kDisc);
  auto shared = [](const Divisor& a, const Divisor& b) {
    std::vector<cplx> out;
    for (const auto& x : a.entries)
      for (const auto& y : b.entries)
        if (std::abs(x.point - y.point) <= tol::kCluster * (1.0 + std::abs(x.point))) {
          out.push_back(x.point);
          break;
        }
    return out;
  };
  for (const auto* a : {&r12.inside, &r12.marginal})
    for (const auto* b : {&r13.inside, &r13.marginal})
      if ((a == &r12.marginal || b == &r13.marginal) && !shared(*a, *b).empty())
        throw Error(ErrorKind::MarginalRoot, "triple intersection on the unit circle");
  return shared(r12.inside, r13.inside);
}

InterpolationData interpolation_data(const AvoidanceTriple& t) {
  const auto points = triple_intersections(t);
  const RatFunc d32 = t.phi3 - t.phi2;
  const RatFunc d31 = t.phi3 - t.phi1;
  const RatFunc d12 = t.phi1 - t.phi2;

  InterpolationData data;
  auto take = [&](const RatFunc& f, Divisor& into) {
    auto split = roots_in(f.num(), kDisc);
    into = std::move(split.inside);
    append(data.boundary, split.marginal);
  };
  take(d32, data.zeros_divisor);
  take(d31, data.poles_divisor);
  take(d12, data.ones_divisor);

  const RatFunc ratio = d31 / d32;
  for (const cplx a : points) data.jets.push_back({a, multiplicity_at(data.ones_divisor, a), ratio});
  return data;
}

// Both directions are assembled at polynomial level with a single final
// reduction: with phi_i = P_i/Q_i and X_ij = P_i Q_j - P_j Q_i,
//   g = (F_n Q1 - P1 F_d) X32 / ((F_n Q2 - P2 F_d) X31),
//   f = (P2 G_n X31 - P1 G_d X32) / (Q2 G_n X31 - Q1 G_d X32).
RatFunc cross_ratio_fg(const RatFunc& f, const AvoidanceTriple& t) {
  t.validate();
  const Tracked a = cross_tracked(f, t.phi1);
  const Tracked b = cross_tracked(f, t.phi2);
  if (a.value.is_zero() || b.value.is_zero())
    throw Error(ErrorKind::DegenerateCrossRatio, "f coincides with phi1 or phi2");
  return RatFunc((a * cross_tracked(t.phi3, t.phi2)).value, (b * cross_tracked(t.phi3, t.phi1)).value);
}

RatFunc inverse_cross_ratio(const RatFunc& g, const AvoidanceTriple& t) {
  t.validate();
  if (g.is_zero()) throw Error(ErrorKind::DegenerateCrossRatio, "g == 0 corresponds to f == phi1");
  const Tracked a = track(g.num()) * cross_tracked(t.phi3, t.phi1);
  const Tracked b = track(g.den()) * cross_tracked(t.phi3, t.phi2);
  const Poly den = (track(t.phi2.den()) * a - track(t.phi1.den()) * b).value;
  if (den.is_zero()) throw Error(ErrorKind::DegenerateCrossRatio, "g corresponds to f == infinity");
  return RatFunc((track(t.phi2.num()) * a - track(t.phi1.num()) * b).value, den);
}

bool verify_g(const RatFunc& g, const InterpolationData& data) {
  if (g.is_zero()) return false;
  const auto g_zeros = roots_in(g.num(), kDisc).inside;
  const auto g_poles = roots_in(g.den(), kDisc).inside;
  const RatFunc g_minus_one = g - RatFunc(1.0);
  if (g_minus_one.is_zero()) return false;
  const auto g_ones = roots_in(g_minus_one.num(), kDisc).inside;

  Signed have, want;
  add_signed(have, g_zeros, 1);
  add_signed(have, g_poles, -1);
  add_signed(want, data.zeros_divisor, 1);
  add_signed(want, data.poles_divisor, -1);
  if (!same_signed(have, want)) return false;

  Signed have1, want1;
  add_signed(have1, g_ones, 1);
  add_signed(have1, g_poles, -1);
  add_signed(want1, data.ones_divisor, 1);
  add_signed(want1, data.poles_divisor, -1);
  if (!same_signed(have1, want1)) return false;

  return std::all_of(data.jets.begin(), data.jets.end(), [&](const Jet& j) { return jet_holds(g, j); });
}

bool verify_avoidance(const RatFunc& f, const AvoidanceTriple& t, const RegionSpec& region) {
  t.validate();
  bool all = true;
  for (const auto* phi : {&t.phi1, &t.phi2, &t.phi3}) all = avoids(f, *phi, region) && all;
  return all;
}

GoldbergProfile goldberg_profile(const RatFunc& f) {
  if (f.is_constant()) throw Error(ErrorKind::ConstantFunction, "profile of a constant function");
  GoldbergProfile prof;
  auto count = [&](const Poly& p, int& n) {
    const auto split = roots_in(p, kDisc);
    if (!split.marginal.empty())
      throw Error(ErrorKind::PreimageOnBoundary, "a preimage of 0, 1 or infinity lies on |z| = 1");
    n = split.inside.degree();
    for (const auto& e : split.inside.entries) prof.rho = std::max(prof.rho, std::abs(e.point));
  };
  count(f.num(), prof.n_zeros);
  count(f.den(), prof.n_poles);
  count(f.num() - f.den(), prof.n_ones);

  // Every preimage in D lies within rho of the origin, inside gamma's circle.
  prof.N0 = prof.n_zeros - prof.n_poles;
  prof.N1 = prof.n_ones - prof.n_poles;

  auto& c = prof.classes;
  c.F0 = prof.N0 != 0 && prof.N1 != 0 && prof.N0 != prof.N1;
  const bool counts_distinct =
      prof.n_zeros != prof.n_poles && prof.n_zeros != prof.n_ones && prof.n_poles != prof.n_ones;
  c.F1 = c.F0 && counts_distinct;
  c.F3 = c.F1;
  c.F2 = c.F1 && prof.n_poles == 0;
  c.F4 = c.F2 && f.is_polynomial();
  return prof;
}

int sampled_winding(const RatFunc& f, cplx value, double radius, int samples) {
  double total = 0.0;
  cplx prev = 0.0;
  for (int k = 0; k <= samples; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / samples;
    const auto v = f.eval_sphere(std::polar(radius, theta));
    if (v.infinite) throw Error(ErrorKind::PreimageOnBoundary, "pole on the winding contour");
    const cplx w = v.value - value;
    if (k > 0) total += std::arg(w / prev);
    prev = w;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

double preimage_clearance(const RatFunc& f, double radius) {
  double best = std::numeric_limits<double>::infinity();
  for (const Poly& p : {f.num(), f.den(), Poly(f.num() - f.den())}) {
    if (p.degree() <= 0) continue;
    for (const auto& r : poly_roots(p).roots) best = std::min(best, std::abs(std::abs(r.point) - radius));
  }
  return best;
}

}  // namespace stabkit
