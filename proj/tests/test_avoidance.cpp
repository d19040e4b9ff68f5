#include <doctest.h>

#include "stabkit/avoidance.hpp"
#include "stabkit/errors.hpp"
#include "test_support.hpp"

using namespace stabkit;

namespace {

const RatFunc Z = RatFunc::z();
RatFunc poly(std::initializer_list<double> c) { return RatFunc::from_poly(Poly(c)); }
bool near(const RatFunc& a, const RatFunc& b, double tolerance = 1e-10) {
  return coeff_rel_error(a, b) <= tolerance;
}

const AvoidanceTriple kBasic{0.0, 1.0, Z};                              // (0, 1, z)
const AvoidanceTriple kJet{0.0, poly({0.0, 0.0, 1.0}), poly({0.0, 0.0, 0.0, 1.0})};  // (0, z^2, z^3)

// Rational function of small modulus on the closed disc: poles outside
// radius 1.5, coefficients small.
RatFunc small_in_disc(testing::Rng& rng) {
  const int nd = rng.integer(0, 2);
  const int dd = rng.integer(0, 2);
  std::vector<cplx> poles;
  for (const auto& r : rng.separated_roots(dd, 1.0, 0.1)) poles.push_back(r / std::abs(r) * rng.uniform(1.6, 3.0));
  return RatFunc(rng.poly(nd, -0.3, 0.3), Poly::from_roots(poles));
}

}  // namespace

TEST_CASE("triple_intersections examples") {
  const auto e = triple_intersections(kJet);
  REQUIRE(e.size() == 1);
  CHECK(std::abs(e[0]) < 1e-12);
  CHECK(triple_intersections(kBasic).empty());
  CHECK(triple_intersections({Z, poly({1.0, 1.0}), poly({-1.0, 1.0})}).empty());
}

TEST_CASE("triple validation") {
  CHECK_THROWS_AS(triple_intersections({Z, Z, 0.0}), Error);
  const RatFunc pole(Poly{1.0}, Poly{-0.5, 1.0});
  CHECK_THROWS_AS(triple_intersections({pole, 2.0 * pole, 3.0 * pole}), Error);
  CHECK_NOTHROW(triple_intersections({pole, 2.0 * pole, 0.0}));
}

TEST_CASE("interpolation_data examples") {
  auto data = interpolation_data(kBasic);
  CHECK(data.zeros_divisor.empty());
  CHECK(data.poles_divisor.matches(Divisor{{{0.0, 1}}}));
  CHECK(data.ones_divisor.empty());
  CHECK(data.jets.empty());
  CHECK(data.boundary.matches(Divisor{{{1.0, 1}}}));

  // (1/z, (z-a)/z^2, 0) with a = 0.5: phi1 - phi2 = a/z^2 has no zeros.
  const double a = 0.5;
  data = interpolation_data({RatFunc(Poly{1.0}, Poly{0.0, 1.0}), RatFunc(Poly{-a, 1.0}, Poly{0.0, 0.0, 1.0}), 0.0});
  CHECK(data.ones_divisor.empty());
  CHECK(data.zeros_divisor.matches(Divisor{{{a, 1}}}));
  CHECK(data.poles_divisor.empty());
  CHECK(data.jets.empty());

  data = interpolation_data(kJet);
  REQUIRE(data.jets.size() == 1);
  CHECK(data.jets[0].order == 2);
  CHECK(near(data.jets[0].ratio, RatFunc(Poly{0.0, 1.0}, Poly{-1.0, 1.0})));
  CHECK(data.zeros_divisor.matches(Divisor{{{0.0, 2}}}));
  CHECK(data.poles_divisor.matches(Divisor{{{0.0, 3}}}));
  CHECK(data.ones_divisor.matches(Divisor{{{0.0, 2}}}));
}

TEST_CASE("cross_ratio_fg examples") {
  CHECK(cross_ratio_fg(Z, kBasic) == RatFunc(1.0));
  CHECK(near(cross_ratio_fg(kJet.phi3, kJet), RatFunc(1.0)));
  CHECK_THROWS_AS(cross_ratio_fg(kBasic.phi1, kBasic), Error);
  CHECK_THROWS_AS(cross_ratio_fg(kBasic.phi2, kBasic), Error);
  const RatFunc g = cross_ratio_fg(poly({0.0, 0.0, 1.0}), kBasic);
  CHECK(near(g, RatFunc(Poly{0.0, 1.0}, Poly{1.0, 1.0})));
  // g has a pole exactly where f meets phi2: f = z^2 = 1 at z = -1.
  CHECK(g.eval_sphere(-1.0).infinite);
}

TEST_CASE("inverse_cross_ratio examples") {
  const RatFunc f = poly({0.0, 0.0, 1.0});
  CHECK(near(inverse_cross_ratio(cross_ratio_fg(f, kBasic), kBasic), f));
  const RatFunc from_two = inverse_cross_ratio(2.0, kBasic);
  CHECK(near(from_two, RatFunc(Poly{0.0, 2.0}, Poly{1.0, 1.0})));
  CHECK(near(cross_ratio_fg(from_two, kBasic), RatFunc(2.0)));
  CHECK(near(inverse_cross_ratio(RatFunc(Poly{0.0, 1.0}, Poly{1.0, 1.0}), kBasic), f));
  CHECK(near(inverse_cross_ratio(1.0, kBasic), Z));
  CHECK_THROWS_AS(inverse_cross_ratio(0.0, kBasic), Error);
  // (phi3 - phi2)/(phi3 - phi1) = (z - 1)/z is the image of f = infinity.
  CHECK_THROWS_AS(inverse_cross_ratio(RatFunc(Poly{-1.0, 1.0}, Poly{0.0, 1.0}), kBasic), Error);
}

TEST_CASE("verify_g examples") {
  const auto data = interpolation_data(kBasic);
  const RatFunc f = poly({2.0, 1.0});
  REQUIRE(verify_avoidance(f, kBasic, RegionSpec::disc()));
  CHECK(verify_g(cross_ratio_fg(f, kBasic), data));
  CHECK_FALSE(verify_g(Z, data));

  const auto jet_data = interpolation_data(kJet);
  const RatFunc one = 1.0;
  REQUIRE(verify_avoidance(one, kJet, RegionSpec::disc()));
  const RatFunc g = cross_ratio_fg(one, kJet);
  CHECK(near(g, RatFunc(Poly{-1.0}, Poly{0.0, 1.0, 1.0})));
  CHECK(verify_g(g, jet_data));
  // Same divisors in D, wrong 0-jet.
  CHECK_FALSE(verify_g(RatFunc(Poly{-2.0}, Poly{0.0, 1.0, 1.0}), jet_data));
}

TEST_CASE("verify_avoidance examples") {
  const auto d = RegionSpec::disc();
  CHECK(verify_avoidance(2.0, kBasic, d));
  CHECK_FALSE(verify_avoidance(poly({0.0, 0.0, 1.0}), kBasic, d));
  CHECK(verify_avoidance(poly({2.0, 1.0}), kBasic, d));
  CHECK_THROWS_AS(verify_avoidance(Z, kBasic, d), Error);
}

TEST_CASE("cross-ratio round trip on random instances") {
  testing::Rng rng(101);
  double worst = 0.0;
  int done = 0;
  while (done < 100) {
    auto rf = [&] { return RatFunc(rng.poly(rng.integer(0, 3), -2, 2), rng.poly(rng.integer(0, 3), -2, 2)); };
    const AvoidanceTriple t{rf(), rf(), rf()};
    const RatFunc f = rf();
    try {
      t.validate();
      if ((f - t.phi1).is_zero() || (f - t.phi2).is_zero()) continue;
    } catch (const Error&) {
      continue;
    }
    worst = std::max(worst, coeff_rel_error(inverse_cross_ratio(cross_ratio_fg(f, t), t), f));
    ++done;
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("forward direction: avoiding f yields an admissible g") {
  testing::Rng rng(202);
  int verified = 0, with_jets = 0;
  for (int trial = 0; trial < 300; ++trial) {
    AvoidanceTriple t{small_in_disc(rng), small_in_disc(rng), small_in_disc(rng)};
    if (trial % 3 == 0) {
      // Force a triple intersection at the origin.
      const int k = rng.integer(1, 2);
      t.phi2 = t.phi1 + RatFunc::from_poly(Poly::monomial(k, rng.uniform(0.1, 0.3)));
      t.phi3 = t.phi1 + RatFunc::from_poly(Poly::monomial(k + rng.integer(0, 1), rng.uniform(-0.3, -0.1)) +
                                           Poly::monomial(k + 2, 0.05));
    }
    const RatFunc f(Poly{rng.uniform(1.5, 3.0), rng.uniform(-0.4, 0.4)}, Poly{1.0});
    InterpolationData data;
    try {
      data = interpolation_data(t);
      if (!verify_avoidance(f, t, RegionSpec::disc())) continue;
    } catch (const Error&) {
      continue;
    }
    if (!data.boundary.empty()) continue;
    CHECK(verify_g(cross_ratio_fg(f, t), data));
    ++verified;
    with_jets += data.jets.empty() ? 0 : 1;
  }
  CHECK(verified > 150);
  CHECK(with_jets > 30);
}

TEST_CASE("goldberg_profile examples") {
  auto p = goldberg_profile(poly({0.0, 2.0}));
  CHECK(p.rho == doctest::Approx(0.5));
  CHECK(p.n_zeros == 1);
  CHECK(p.n_ones == 1);
  CHECK(p.n_poles == 0);
  CHECK(p.N0 == 1);
  CHECK(p.N1 == 1);
  CHECK_FALSE(p.classes.F2);
  CHECK_FALSE(p.classes.F0);

  p = goldberg_profile(poly({0.0, 0.0, 4.0}));
  CHECK(p.n_zeros == 2);
  CHECK(p.n_ones == 2);
  CHECK(p.rho == doctest::Approx(0.5));
  CHECK_FALSE(p.classes.F2);

  // z (1.4 - z) / 0.45: simple zero at 0, ones at 0.5 and 0.9.
  p = goldberg_profile(RatFunc::from_poly(Poly{0.0, 1.4 / 0.45, -1.0 / 0.45}));
  CHECK(p.n_zeros == 1);
  CHECK(p.n_ones == 2);
  CHECK(p.N0 == 1);
  CHECK(p.N1 == 2);
  CHECK(p.rho == doctest::Approx(0.9));
  CHECK(p.classes.F0);
  CHECK(p.classes.F1);
  CHECK(p.classes.F2);
  CHECK(p.classes.F3);
  CHECK(p.classes.F4);
  CHECK(sampled_winding(RatFunc::from_poly(Poly{0.0, 1.4 / 0.45, -1.0 / 0.45}), 1.0, p.gamma_radius()) == 2);

  // A pole in D keeps it out of the holomorphic classes.
  p = goldberg_profile(RatFunc(Poly{0.0, 0.0, 3.0}, Poly{-0.1, 1.0}));
  CHECK(p.n_poles == 1);
  CHECK(p.classes.F3 == p.classes.F1);
  CHECK_FALSE(p.classes.F2);

  CHECK_THROWS_AS(goldberg_profile(3.0), Error);
  CHECK_THROWS_AS(goldberg_profile(poly({-1.0, 1.0})), Error);
}

TEST_CASE("sampled windings agree with the argument principle") {
  testing::Rng rng(303);
  int checked = 0, f2_seen = 0;
  while (checked < 50) {
    const RatFunc f(rng.poly(rng.integer(1, 4), -2, 2), rng.poly(rng.integer(0, 2), -2, 2));
    if (f.is_constant()) continue;
    GoldbergProfile p;
    try {
      p = goldberg_profile(f);
    } catch (const Error&) {
      continue;
    }
    const double r = p.gamma_radius();
    if (preimage_clearance(f, r) < 1e-3) continue;
    CHECK(sampled_winding(f, 0.0, r) == p.N0);
    CHECK(sampled_winding(f, 1.0, r) == p.N1);
    if (p.classes.F2) {
      CHECK(p.rho > 0.00587465);
      ++f2_seen;
    }
    ++checked;
  }
  CHECK(f2_seen >= 1);
}

TEST_CASE("inverse cross ratio with a cancelled leading coefficient") {
  // The unreduced denominator of the inverse has a leading coefficient that
  // cancels to rounding level; f has to come back as a 3/2 function.
  const AvoidanceTriple t{
      RatFunc(Poly{1.1001699005385228}, Poly{-0.63239902067698539, -1.2636340073565089, 1.0}),
      RatFunc(Poly{1.4045166481985458, 1.2093369376484571},
              Poly{-0.96675145901017168, -0.90739056705947541, 1.1324570257726689, 1.0}),
      poly({-0.5867985570297225, 1.1538496579325614, 0.13746685281336171, 0.65721135240967077})};
  const RatFunc f(Poly{-1.4094572560695324, -2.9239679967405756, -0.12487581698237182, 0.79596376728662532},
                  Poly{0.14151018905540136, 0.092468476674945954, 1.0});
  const RatFunc back = inverse_cross_ratio(cross_ratio_fg(f, t), t);
  CHECK(back.num().degree() == 3);
  CHECK(back.den().degree() == 2);
  CHECK(coeff_rel_error(back, f) <= 1e-10);
}

TEST_CASE("jet at a pole of g") {
  // phi3 - phi1 vanishes to order 3 at 0 and phi3 - phi2 to order 2, so g
  // has a simple pole at the triple intersection.
  const AvoidanceTriple t{poly({-0.074715011699962586, 0.13096672283498323, 0.29924828646922935}),
                          poly({-0.074715011699962586, 0.13096672283498323, 0.52498477017508083}),
                          poly({-0.074715011699962586, 0.13096672283498323, 0.29924828646922935,
                                -0.20128652379730472, 0.05})};
  const RatFunc f = poly({2.6269299963382728, 0.16136100297104894});
  REQUIRE(verify_avoidance(f, t, RegionSpec::disc()));
  const auto data = interpolation_data(t);
  REQUIRE(data.jets.size() == 1);
  CHECK(data.jets[0].order == 2);
  const RatFunc g = cross_ratio_fg(f, t);
  CHECK(verify_g(g, data));
  CHECK_FALSE(verify_g(g * poly({1.0, 0.5}), data));
}
