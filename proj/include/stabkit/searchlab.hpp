#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stabkit/stability.hpp"

namespace stabkit {

struct SearchSpec {
  std::vector<RatFunc> plants;  // 1 to 3
  RegionSpec region = RegionSpec::disc();
  int num_degree = 0;           // controller numerator degree bound, <= 8
  int den_degree = 0;           // controller denominator degree bound, <= 8
  bool require_stable_controller = false;
  bool require_bistable_controller = false;
  long budget = 10000;          // objective evaluations
  std::uint64_t seed = 0;
  int threads = 0;              // 0: hardware concurrency

  /// Throws InvalidSpec.
  void validate() const;
};

struct Certificate {
  RatFunc controller;
  std::vector<InternalStabReport> per_plant;
  double margin = 0.0;
};

struct Rejection {
  int plant_index = -1;  // -1 when the controller itself violates the spec
  std::string reason;
  std::optional<InternalStabReport> report;
};

struct SearchStats {
  long evaluations = 0;  // spent up to and including the returned restart
  int restarts = 0;
  double best_margin = 0.0;
};

struct SearchResult {
  std::optional<Certificate> certificate;
  SearchStats stats;
  bool found() const { return certificate.has_value(); }
};

/// Minimum over plants of the distance from the closed-loop characteristic
/// roots d_p d_c - n_p n_c to the closed region, and of |1 - cp| on a
/// 720-point boundary grid. When the spec asks for a stable (bistable)
/// controller, the distances of its poles (and zeros) count as well.
double stabilization_margin(const RatFunc& c, const SearchSpec& spec);

std::variant<Certificate, Rejection> certify(const RatFunc& c, const SearchSpec& spec);

/// Multistart Nelder-Mead over controller coefficients, budget/200 restarts
/// of 200 evaluations each. Denominators are normalized to constant term 1.
/// The result does not depend on the number of threads. NotFound is not a
/// proof of nonexistence.
SearchResult search(const SearchSpec& spec);

}  // namespace stabkit
