#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace stabkit {

using cplx = std::complex<double>;

namespace tol {
// Roots closer than kCluster * (1 + max|root|) are one multiple root.
inline constexpr double kCluster = 1e-6;
inline constexpr double kBoundaryBand = 1e-9;
// Routh pivots below this (relative to the row scale) are ambiguous.
inline constexpr double kRouthPivot = 1e-10;
}  // namespace tol

/// Real univariate polynomial, ascending powers: coeffs()[k] multiplies z^k.
/// Trailing zeros are always stripped, so the zero polynomial has no
/// coefficients and degree() == -1.
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }
  explicit Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Poly constant(double c) { return Poly({c}); }
  static Poly monomial(int degree, double c = 1.0);
  /// Monic polynomial with the given roots; conjugate roots must appear in
  /// pairs for the result to be real (imaginary parts are dropped).
  static Poly from_roots(std::span<const cplx> roots);

  const std::vector<double>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  double operator[](int k) const {
    return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : 0.0;
  }
  double max_abs_coeff() const;

  double operator()(double x) const;
  cplx operator()(cplx z) const;
  /// sum |a_k| |z|^k, the natural scale for the rounding error of p(z).
  double eval_scale(cplx z) const;

  Poly derivative() const;
  Poly monic() const;
  Poly scaled(double s) const;
  /// Substitute z -> 1/z and multiply through by z^degree (coefficient reversal).
  Poly reversed(int degree) const;

  /// Taylor coefficients of p about a: p(z) = sum t_j (z-a)^j.
  std::vector<cplx> taylor_at(cplx a) const;
  /// Taylor coefficients of sum |a_k| z^k about r >= 0; bounds the rounding
  /// error of taylor_at(a) for |a| = r.
  std::vector<double> taylor_scale(double r) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(double s, const Poly& p) { return p.scaled(s); }
  Poly operator-() const { return scaled(-1.0); }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim();
  std::vector<double> coeffs_;
};

struct DivMod {
  Poly quotient;
  Poly remainder;
};
DivMod divmod(const Poly& num, const Poly& den);

struct Root {
  cplx point;
  int multiplicity = 1;
};

struct RootSet {
  std::vector<Root> roots;
  double residual = 0.0;

  int total_multiplicity() const;
};

enum class RegionKind { OpenUnitDisc, OpenRightHalfPlane };

struct RegionSpec {
  RegionKind kind = RegionKind::OpenUnitDisc;
  double boundary_band = tol::kBoundaryBand;

  static RegionSpec disc(double band = tol::kBoundaryBand) {
    return {RegionKind::OpenUnitDisc, band};
  }
  static RegionSpec rhp(double band = tol::kBoundaryBand) {
    return {RegionKind::OpenRightHalfPlane, band};
  }

  /// Signed distance from the boundary, positive inside the region.
  double depth(cplx z) const;
  bool inside(cplx z) const { return depth(z) > boundary_band; }
  bool marginal(cplx z) const;
  void validate() const;
};

/// All complex roots with multiplicities. Companion-matrix eigenvalues,
/// clustered into multiple roots, then Newton-polished where simple.
RootSet poly_roots(const Poly& p);

/// Monic approximate GCD. A common root is one shared by both root sets
/// within the clustering tolerance, or within 1e-3 when the residual of one
/// polynomial at the other's root is below 1e-10 of its evaluation scale.
/// Its multiplicity is the smaller one.
Poly poly_gcd(const Poly& a, const Poly& b);

struct RootCount {
  int inside = 0;
  int marginal = 0;
};
RootCount count_roots_in(const Poly& p, const RegionSpec& region);
RootCount count_roots_in(const RootSet& roots, const RegionSpec& region);

/// Routh array test for all roots in the open left half-plane. Throws
/// MarginalCase when a first-column pivot is tiny but not exactly zero.
bool hurwitz_stable(const Poly& p);

}  // namespace stabkit
