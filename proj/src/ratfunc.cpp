#include "stabkit/ratfunc.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

#include "stabkit/errors.hpp"

namespace stabkit {

namespace {

// |den(z)| below this fraction of its evaluation scale is a pole.
constexpr double kPoleTolerance = 1e-13;

std::vector<double> pow_binomial(int plus, int minus) {
  // (1 + z)^plus (1 - z)^minus
  Poly acc{1.0};
  for (int i = 0; i < plus; ++i) acc = acc * Poly{1.0, 1.0};
  for (int i = 0; i < minus; ++i) acc = acc * Poly{1.0, -1.0};
  return acc.coeffs();
}

double norm2(const Poly& p) {
  double s = 0.0;
  for (double c : p.coeffs()) s += c * c;
  return std::sqrt(s);
}

// Backward residual of the cofactor pair: num * v - den * u relative to the
// sizes of the two products.
double cofactor_residual(const Poly& num, const Poly& den, const Poly& u, const Poly& v) {
  const double scale = norm2(num) * norm2(v) + norm2(den) * norm2(u);
  return scale == 0.0 ? std::numeric_limits<double>::infinity() : norm2(num * v - den * u) / scale;
}

// Cofactors u = num/g, v = den/g for a gcd of degree k, as the null vector of
// the convolution system num * v = den * u. Unlike division by an approximate
// g this does not inherit the error of ill-conditioned common roots.
std::pair<Poly, Poly> cofactors_by_nullspace(const Poly& num, const Poly& den, int k) {
  const int m = num.degree(), n = den.degree();
  const int nu = m - k + 1, nv = n - k + 1;
  const double sn = num.max_abs_coeff(), sd = den.max_abs_coeff();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m + n - k + 1, nu + nv);
  for (int j = 0; j < nv; ++j)
    for (int i = 0; i <= m; ++i) s(i + j, j) = num[i] / sn;
  for (int j = 0; j < nu; ++j)
    for (int i = 0; i <= n; ++i) s(i + j, nv + j) = -den[i] / sd;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s, Eigen::ComputeFullV);
  const Eigen::VectorXd x = svd.matrixV().col(nu + nv - 1);
  std::vector<double> v(x.data(), x.data() + nv), u(x.data() + nv, x.data() + nv + nu);
  for (double& c : u) c /= sd;
  for (double& c : v) c /= sn;
  return {Poly(std::move(u)), Poly(std::move(v))};
}

}  // namespace

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero()) throw Error(ErrorKind::ZeroDenominator, "denominator is identically zero");
  if (num.is_zero()) {
    den_ = Poly{1.0};
    return;
  }
  const Poly g = poly_gcd(num, den);
  if (g.degree() > 0) {
    const Poly qn = divmod(num, g).quotient;
    const Poly qd = divmod(den, g).quotient;
    auto [u, v] = cofactors_by_nullspace(num, den, g.degree());
    if (u.degree() == qn.degree() && v.degree() == qd.degree() &&
        cofactor_residual(num, den, u, v) < cofactor_residual(num, den, qn, qd)) {
      num = std::move(u);
      den = std::move(v);
    } else {
      num = qn;
      den = qd;
    }
  }
  const double lead = den.leading();
  std::vector<double> n = num.coeffs();
  std::vector<double> d = den.coeffs();
  for (double& c : n) c /= lead;
  for (double& c : d) c /= lead;
  d.back() = 1.0;
  num_ = Poly(std::move(n));
  den_ = Poly(std::move(d));
}

SpherePoint RatFunc::eval_sphere(cplx z) const {
  const cplx d = den_(z);
  if (std::abs(d) <= kPoleTolerance * den_.eval_scale(z)) {
    if (num_.is_zero()) return {false, 0.0};
    return SpherePoint::infinity();
  }
  return {false, num_(z) / d};
}

SpherePoint RatFunc::at_infinity() const {
  if (num_.is_zero() || num_.degree() < den_.degree()) return {false, 0.0};
  if (num_.degree() > den_.degree()) return SpherePoint::infinity();
  return {false, num_.leading() / den_.leading()};
}

RatFunc RatFunc::reciprocal() const {
  if (is_zero()) throw Error(ErrorKind::ZeroDenominator, "reciprocal of the zero function");
  return RatFunc(Raw{}, den_.scaled(1.0 / num_.leading()), num_.scaled(1.0 / num_.leading()));
}

RatFunc RatFunc::substitute_inverse() const {
  const int m = std::max(num_.degree(), den_.degree());
  if (is_zero()) return *this;
  return RatFunc(num_.reversed(m), den_.reversed(m));
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroDenominator, "division by the zero function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc make_ratfunc(Poly num, Poly den) { return RatFunc(std::move(num), std::move(den)); }

SpherePoint eval_sphere(const RatFunc& f, cplx z) { return f.eval_sphere(z); }

bool is_proper(const RatFunc& f) { return f.num().degree() < f.den().degree(); }

double coeff_rel_error(const Poly& a, const Poly& b) {
  const double scale = std::max({a.max_abs_coeff(), b.max_abs_coeff(), std::numeric_limits<double>::min()});
  const int n = std::max(a.degree(), b.degree());
  double err = 0.0;
  for (int k = 0; k <= n; ++k) err = std::max(err, std::abs(a[k] - b[k]));
  return err / scale;
}

double coeff_rel_error(const RatFunc& a, const RatFunc& b) {
  return std::max(coeff_rel_error(a.num(), b.num()), coeff_rel_error(a.den(), b.den()));
}

int Divisor::degree() const {
  int s = 0;
  for (const auto& e : entries) s += e.multiplicity;
  return s;
}

bool Divisor::matches(const Divisor& other, double tolerance) const {
  if (entries.size() != other.entries.size()) return false;
  std::vector<bool> used(other.entries.size(), false);
  for (const auto& e : entries) {
    bool found = false;
    for (std::size_t j = 0; j < other.entries.size(); ++j) {
      if (used[j] || other.entries[j].multiplicity != e.multiplicity) continue;
      if (std::abs(other.entries[j].point - e.point) <= tolerance) {
        used[j] = found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

RegionRoots roots_in(const Poly& p, const RegionSpec& region) {
  region.validate();
  RegionRoots out;
  if (p.degree() <= 0) return out;
  for (const auto& r : poly_roots(p).roots) {
    if (region.marginal(r.point))
      out.marginal.entries.push_back({r.point, r.multiplicity});
    else if (region.inside(r.point))
      out.inside.entries.push_back({r.point, r.multiplicity});
  }
  return out;
}

namespace {
Divisor strict_roots(const Poly& p, const RegionSpec& region, const char* what) {
  auto split = roots_in(p, region);
  if (!split.marginal.empty())
    throw Error(ErrorKind::MarginalRoot, std::string(what) + " within the boundary band");
  return split.inside;
}
}  // namespace

Divisor zeros_in(const RatFunc& f, const RegionSpec& region) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "zeros of the zero function");
  return strict_roots(f.num(), region, "zero");
}

Divisor poles_in(const RatFunc& f, const RegionSpec& region) {
  return strict_roots(f.den(), region, "pole");
}

RatFunc mobius_transport(const RatFunc& f) {
  if (f.is_zero()) return f;
  const int m = std::max(f.num().degree(), f.den().degree());
  auto image = [m](const Poly& p) {
    Poly acc;
    for (int k = 0; k <= p.degree(); ++k) {
      if (p[k] == 0.0) continue;
      acc = acc + p[k] * Poly(pow_binomial(m - k, k));
    }
    return acc;
  };
  return RatFunc(image(f.num()), image(f.den()));
}

void StateSpace::validate() const {
  const Eigen::Index n = A.rows();
  if (n < 1 || A.cols() != n || B.rows() != n || B.cols() != 1 || C.rows() != 1 || C.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "state-space matrices have inconsistent shapes");
}

StateSpace realize(const RatFunc& p) {
  if (!is_proper(p)) throw Error(ErrorKind::NotProper, "realization needs deg num < deg den");
  const int n = std::max(1, p.den().degree());
  StateSpace s{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, 1), Eigen::MatrixXd::Zero(1, n)};
  s.B(n - 1, 0) = 1.0;
  if (p.den().degree() == 0) return s;  // zero function
  for (int i = 0; i + 1 < n; ++i) s.A(i, i + 1) = 1.0;
  for (int j = 0; j < n; ++j) {
    s.A(n - 1, j) = -p.den()[j];
    s.C(0, j) = p.num()[j];
  }
  return s;
}

RatFunc transfer_function(const StateSpace& s) {
  s.validate();
  const Eigen::Index n = s.order();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  std::vector<double> charpoly(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> num(static_cast<std::size_t>(n), 0.0);
  charpoly[n] = 1.0;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    M = s.A * M + charpoly[n - k + 1] * I;
    num[n - k] = (s.C * M * s.B)(0, 0);
    charpoly[n - k] = -(s.A * M).trace() / static_cast<double>(k);
  }
  return RatFunc(Poly(std::move(num)), Poly(std::move(charpoly)));
}

std::vector<double> simulate_discrete(const StateSpace& s, const std::vector<double>& u,
                                      std::optional<Eigen::VectorXd> x0) {
  s.validate();
  if (u.empty()) throw Error(ErrorKind::InvalidInput, "input sequence must be non-empty");
  const Eigen::Index n = s.order();
  Eigen::VectorXd x = x0.value_or(Eigen::VectorXd::Zero(n));
  if (x.size() != n) throw Error(ErrorKind::DimensionMismatch, "initial state has the wrong length");
  std::vector<double> y;
  y.reserve(u.size() + 1);
  for (double un : u) {
    y.push_back((s.C * x)(0, 0));
    x = s.A * x + s.B.col(0) * un;
  }
  y.push_back((s.C * x)(0, 0));
  return y;
}

}  // namespace stabkit
