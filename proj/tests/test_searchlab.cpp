#include <doctest.h>

#include "stabkit/errors.hpp"
#include "stabkit/searchlab.hpp"
#include "stabkit/thresholds.hpp"
#include "test_support.hpp"

using namespace stabkit;

namespace {

SearchSpec rhp_spec(RatFunc p) {
  SearchSpec s;
  s.plants = {std::move(p)};
  s.region = RegionSpec::rhp();
  s.seed = 42;
  return s;
}

SearchSpec patel_spec(double a, long budget) {
  SearchSpec s;
  s.plants = {RatFunc::z(), RatFunc(Poly{0.0, 0.0, 1.0}, Poly{-a, 1.0}), 0.0};
  s.num_degree = 2;
  s.den_degree = 2;
  s.budget = budget;
  s.seed = 42;
  return s;
}

bool bit_equal(const RatFunc& a, const RatFunc& b) {
  return a.num().coeffs() == b.num().coeffs() && a.den().coeffs() == b.den().coeffs();
}

}  // namespace

TEST_CASE("certify examples") {
  const RatFunc unstable(Poly{1.0}, Poly{-1.0, 1.0});
  auto r = certify(-2.0, rhp_spec(unstable));
  REQUIRE(std::holds_alternative<Certificate>(r));
  CHECK(std::get<Certificate>(r).margin >= 0.9);
  CHECK(std::get<Certificate>(r).per_plant.size() == 1);

  r = certify(0.0, rhp_spec(unstable));
  REQUIRE(std::holds_alternative<Rejection>(r));
  const auto& rej = std::get<Rejection>(r);
  CHECK(rej.plant_index == 0);
  REQUIRE(rej.report.has_value());
  CHECK_FALSE(rej.report->ok);

  CHECK(std::holds_alternative<Certificate>(certify(0.0, rhp_spec(RatFunc(Poly{1.0}, Poly{1.0, 1.0})))));
}

TEST_CASE("certify a hand-built Patel controller") {
  // g = 2z/(1 + 0.75z)^2 omits 1 in D with g'(0) = 2, giving c = (z - g/2)/z^2.
  const RatFunc c(Poly{1.5, 0.5625}, Poly{1.0, 1.5, 0.5625});
  auto r = certify(c, patel_spec(0.5, 1000));
  REQUIRE(std::holds_alternative<Certificate>(r));
  CHECK(std::get<Certificate>(r).margin > 1e-3);
  // The same controller at a = 0.2 fails for the second plant.
  r = certify(c, patel_spec(0.2, 1000));
  REQUIRE(std::holds_alternative<Rejection>(r));
  CHECK(std::get<Rejection>(r).plant_index == 1);
}

TEST_CASE("certify enforces controller constraints") {
  SearchSpec s = rhp_spec(RatFunc(Poly{1.0}, Poly{1.0, 1.0}));
  s.require_stable_controller = true;
  // c = -(z + 3)/(z - 1) stabilizes 1/(z + 1) (loop z^2 + z + 2) but is itself unstable.
  const RatFunc c(Poly{-3.0, -1.0}, Poly{-1.0, 1.0});
  CHECK(std::holds_alternative<Rejection>(certify(c, s)));
  s.require_stable_controller = false;
  CHECK(std::holds_alternative<Certificate>(certify(c, s)));
  s.require_bistable_controller = true;
  CHECK(std::holds_alternative<Certificate>(certify(RatFunc(Poly{0.5, 1.0}, Poly{2.0, 1.0}), s)));
  // Stabilizing (loop z^2 + 2z + 2.5) but with a zero at 0.5.
  const auto r = certify(RatFunc(Poly{-0.5, 1.0}, Poly{2.0, 1.0}), s);
  REQUIRE(std::holds_alternative<Rejection>(r));
  CHECK(std::get<Rejection>(r).plant_index == -1);
}

TEST_CASE("spec validation") {
  SearchSpec s;
  CHECK_THROWS_AS(s.validate(), Error);
  s.plants = {RatFunc::z()};
  CHECK_NOTHROW(s.validate());
  s.num_degree = 9;
  CHECK_THROWS_AS(s.validate(), Error);
  s.num_degree = 1;
  s.budget = 0;
  CHECK_THROWS_AS(s.validate(), Error);
  s.budget = 1;
  s.plants = {1.0, 2.0, 3.0, 4.0};
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("search finds a constant stabilizer in the RHP") {
  SearchSpec s = rhp_spec(RatFunc(Poly{1.0}, Poly{-1.0, 1.0}));
  s.budget = 50000;
  const auto r = search(s);
  REQUIRE(r.found());
  const RatFunc& c = r.certificate->controller;
  CHECK(c.is_constant());
  CHECK(c.num()[0] < -1.0);
  CHECK(r.certificate->margin > 1e-3);
  CHECK(r.stats.evaluations <= s.budget);
}

TEST_CASE("search stabilizes the Patel triple at a = 0.5") {
  const auto s = patel_spec(0.5, 50000);
  const auto r = search(s);
  REQUIRE(r.found());
  CHECK(r.certificate->margin > 1e-3);
  CHECK(r.certificate->controller.num().degree() <= 2);
  CHECK(r.certificate->controller.den().degree() <= 2);
  // Soundness: every certificate re-passes the exact checks.
  for (std::size_t i = 0; i < s.plants.size(); ++i) {
    const auto rep = internal_check(s.plants[i], r.certificate->controller, s.region);
    CHECK(rep.ok);
    CHECK(rep.marginal.empty());
  }
}

TEST_CASE("search does not find a stable controller for a plant failing PIP") {
  SearchSpec s = rhp_spec(RatFunc(Poly{-2.0, 1.0}, Poly{3.0, -4.0, 1.0}));
  s.require_stable_controller = true;
  s.num_degree = 2;
  s.den_degree = 2;
  s.budget = 20000;
  const auto r = search(s);
  CHECK_FALSE(r.found());
  CHECK(r.stats.restarts == 100);
  CHECK(r.stats.evaluations >= s.budget);
}

TEST_CASE("random plants failing PIP admit no stable stabilizer") {
  testing::Rng rng(77);
  int tried = 0;
  while (tried < 12) {
    // Real zeros and poles spread over both half-planes.
    std::vector<cplx> zeros, poles;
    for (int k = rng.integer(1, 2); k > 0; --k) zeros.emplace_back(rng.uniform(-3.0, 3.0), 0.0);
    for (int k = rng.integer(static_cast<int>(zeros.size()) + 1, 3); k > 0; --k)
      poles.emplace_back(rng.uniform(-3.0, 3.0), 0.0);
    const RatFunc p(Poly::from_roots(zeros), Poly::from_roots(poles));
    if (p.den().degree() == 0 || pip_check(p)) continue;
    SearchSpec s = rhp_spec(p);
    s.require_stable_controller = true;
    s.num_degree = 2;
    s.den_degree = 2;
    s.budget = 2000;
    s.seed = static_cast<std::uint64_t>(tried);
    CHECK_FALSE(search(s).found());
    ++tried;
  }
}

TEST_CASE("search is deterministic across thread counts") {
  for (double a : {0.5, 0.2}) {
    auto s = patel_spec(a, 20000);
    s.threads = 1;
    const auto one = search(s);
    s.threads = 3;
    const auto three = search(s);
    s.threads = 8;
    const auto eight = search(s);
    REQUIRE(one.found() == three.found());
    REQUIRE(one.found() == eight.found());
    CHECK(one.stats.evaluations == three.stats.evaluations);
    CHECK(one.stats.evaluations == eight.stats.evaluations);
    if (one.found()) {
      CHECK(bit_equal(one.certificate->controller, three.certificate->controller));
      CHECK(bit_equal(one.certificate->controller, eight.certificate->controller));
    }
  }
}

TEST_CASE("Patel search is consistent with the threshold") {
  // Below 1/16 no controller exists, so the search must come back empty.
  for (double a : {0.01, 0.03, 0.05}) {
    CHECK(patel_example_decision(a).status == Status::NotStabilizable);
    CHECK_FALSE(search(patel_spec(a, 10000)).found());
  }
  for (double a : {0.2, 0.5}) CHECK(search(patel_spec(a, 20000)).found());
  // Close to the threshold, low-degree controllers are out of reach of the
  // harness; any success must still agree with the verdict.
  for (double a : {0.07, 0.1}) {
    const auto r = search(patel_spec(a, 10000));
    if (r.found()) CHECK(patel_example_decision(a).status == Status::Stabilizable);
    MESSAGE("a = " << a << ": " << std::string(r.found() ? "found" : "not found") << ", best margin " << r.stats.best_margin);
  }
}
