#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "stabkit/poly.hpp"

namespace stabkit {

/// Value of a rational function on the Riemann sphere.
struct SpherePoint {
  bool infinite = false;
  cplx value = 0.0;

  static SpherePoint infinity() { return {true, 0.0}; }
};

/// Real rational function num/den in canonical form: coprime, den monic.
/// The zero function is 0/1. There is no identically-infinite RatFunc.
class RatFunc {
 public:
  RatFunc() : den_{1.0} {}
  /// Cancels common factors and makes den monic. The reduced pair is the
  /// quotient by poly_gcd or the null vector of num * v = den * u for the
  /// same gcd degree, whichever has the smaller residual.
  /// Throws ZeroDenominator.
  RatFunc(Poly num, Poly den);
  RatFunc(double c) : num_{c}, den_{1.0} {}  // NOLINT(google-explicit-constructor)
  static RatFunc from_poly(Poly p) { return RatFunc(std::move(p), Poly{1.0}); }
  /// The identity function z.
  static RatFunc z() { return from_poly(Poly{0.0, 1.0}); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  bool is_polynomial() const { return den_.degree() == 0; }

  SpherePoint eval_sphere(cplx z) const;
  SpherePoint at_infinity() const;

  /// 1/f. Throws ZeroDenominator for f == 0.
  RatFunc reciprocal() const;
  /// f(1/z), the discrete-time z^-1 convention.
  RatFunc substitute_inverse() const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator-() const { return RatFunc(-num_, den_); }

  friend bool operator==(const RatFunc&, const RatFunc&) = default;

 private:
  struct Raw {};
  RatFunc(Raw, Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}

  Poly num_;
  Poly den_;
};

RatFunc make_ratfunc(Poly num, Poly den);
SpherePoint eval_sphere(const RatFunc& f, cplx z);
bool is_proper(const RatFunc& f);

/// Max coefficient difference relative to the largest coefficient, after
/// normalising both functions the same way. Used by round-trip checks.
double coeff_rel_error(const RatFunc& a, const RatFunc& b);
double coeff_rel_error(const Poly& a, const Poly& b);

struct DivisorEntry {
  cplx point;
  int multiplicity = 1;
};

/// Multiset of points with multiplicities.
struct Divisor {
  std::vector<DivisorEntry> entries;

  bool empty() const { return entries.empty(); }
  int degree() const;
  /// Same points (within `tolerance`) with identical multiplicities.
  bool matches(const Divisor& other, double tolerance = 1e-6) const;
};

/// Roots of a polynomial split by a region: strictly interior ones and the
/// ones inside the boundary band.
struct RegionRoots {
  Divisor inside;
  Divisor marginal;
};
RegionRoots roots_in(const Poly& p, const RegionSpec& region);

/// Throw MarginalRoot when any relevant root sits in the boundary band.
Divisor zeros_in(const RatFunc& f, const RegionSpec& region);
Divisor poles_in(const RatFunc& f, const RegionSpec& region);

/// Precomposition with w(z) = (1 - z)/(1 + z), which maps the open unit
/// disc onto the open right half-plane and is its own inverse.
RatFunc mobius_transport(const RatFunc& f);
inline RatFunc mobius_to_disc(const RatFunc& f) { return mobius_transport(f); }
inline RatFunc mobius_to_halfplane(const RatFunc& f) { return mobius_transport(f); }

struct StateSpace {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;  // n x 1
  Eigen::MatrixXd C;  // 1 x n

  Eigen::Index order() const { return A.rows(); }
  void validate() const;
};

/// Controllable canonical form of a proper p. Throws NotProper.
StateSpace realize(const RatFunc& p);
/// C (zI - A)^-1 B via the Leverrier-Faddeev recursion, canonicalised.
RatFunc transfer_function(const StateSpace& s);

/// y(n) = C x(n) for n = 0..u.size(), x(n+1) = A x(n) + B u(n).
/// Signals are causal; x0 defaults to zero.
std::vector<double> simulate_discrete(const StateSpace& s, const std::vector<double>& u,
                                      std::optional<Eigen::VectorXd> x0 = std::nullopt);

}  // namespace stabkit
