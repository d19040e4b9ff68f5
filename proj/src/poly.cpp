#include "stabkit/poly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "stabkit/errors.hpp"

namespace stabkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Relative size a Taylor coefficient may have at an accepted multiple root.
constexpr double kMultipleRootTaylor = 1e-9;
// Candidate radius for derivative-confirmed merging of a multiple root that
// the eigenvalue solver scattered beyond the plain clustering radius.
constexpr double kWideCluster = 1e-3;

// Parlett-Reinsch balancing, diagonal included.
void balance(Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  const double gamma = 0.9;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double row_norm = m.row(i).lpNorm<1>();
      const double col_norm = m.col(i).lpNorm<1>();
      if (row_norm == 0.0 || col_norm == 0.0) continue;
      int exponent = 0;
      std::frexp(row_norm / col_norm, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double scaled_col = std::ldexp(col_norm, exponent);
      const double scaled_row = std::ldexp(row_norm, -exponent);
      if (scaled_col + scaled_row < gamma * (col_norm + row_norm)) {
        changed = true;
        m.row(i) *= std::ldexp(1.0, -exponent);
        m.col(i) *= std::ldexp(1.0, exponent);
      }
    }
  }
}

std::vector<cplx> companion_eigenvalues(const Poly& p) {
  const int n = p.degree();
  const double lead = p.leading();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -p[i] / lead;
  balance(c);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(c, false);
  const auto& ev = solver.eigenvalues();
  std::vector<cplx> out(ev.data(), ev.data() + ev.size());
  return out;
}

// Union-find components of points within `radius` of each other.
std::vector<std::vector<int>> link_components(const std::vector<cplx>& pts, double radius) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(pts[i] - pts[j]) <= radius) parent[find(i)] = find(j);
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

cplx mean_of(const std::vector<cplx>& pts, const std::vector<int>& idx) {
  cplx s = 0.0;
  for (int i : idx) s += pts[i];
  return s / static_cast<double>(idx.size());
}

bool is_multiple_root(const Poly& p, cplx center, int k) {
  const auto t = p.taylor_at(center);
  const auto s = p.taylor_scale(std::abs(center));
  for (int j = 0; j < k; ++j)
    if (std::abs(t[j]) > kMultipleRootTaylor * s[j]) return false;
  return true;
}

std::vector<Root> cluster(const Poly& p, const std::vector<cplx>& pts) {
  double max_abs = 0.0;
  for (const auto& z : pts) max_abs = std::max(max_abs, std::abs(z));
  const double tight = tol::kCluster * (1.0 + max_abs);
  const double wide = kWideCluster * (1.0 + max_abs);

  std::vector<Root> out;
  for (const auto& group : link_components(pts, wide)) {
    const int k = static_cast<int>(group.size());
    if (k > 1) {
      const cplx center = mean_of(pts, group);
      if (is_multiple_root(p, center, k)) {
        out.push_back({center, k});
        continue;
      }
    }
    std::vector<cplx> sub;
    for (int i : group) sub.push_back(pts[i]);
    for (const auto& g : link_components(sub, tight))
      out.push_back({mean_of(sub, g), static_cast<int>(g.size())});
  }

  for (auto& r : out)
    if (std::abs(r.point.imag()) <= tight) r.point = {r.point.real(), 0.0};
  return out;
}

void polish_simple(const Poly& p, std::vector<Root>& roots) {
  const Poly dp = p.derivative();
  for (auto& r : roots) {
    if (r.multiplicity != 1) continue;
    const cplx d = dp(r.point);
    if (d == 0.0) continue;
    cplx next = r.point - p(r.point) / d;
    if (r.point.imag() == 0.0) next = {next.real(), 0.0};
    if (std::abs(p(next)) < std::abs(p(r.point))) r.point = next;
  }
}

// Real input: pair every upper-half root with a lower-half partner and make
// the partner its exact conjugate.
void enforce_conjugate_pairs(std::vector<Root>& roots) {
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].point.imag() <= 0.0) continue;
    const cplx target = std::conj(roots[i].point);
    std::size_t best = roots.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (used[j] || roots[j].point.imag() >= 0.0) continue;
      if (roots[j].multiplicity != roots[i].multiplicity) continue;
      const double d = std::abs(roots[j].point - target);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best < roots.size()) {
      used[best] = true;
      roots[best].point = target;
    }
  }
}

}  // namespace

Poly Poly::monomial(int degree, double c) {
  std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::from_roots(std::span<const cplx> roots) {
  std::vector<cplx> c{1.0};
  for (const auto& r : roots) {
    c.push_back(0.0);
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  std::vector<double> re;
  for (const auto& z : c) re.push_back(z.real());
  return Poly(std::move(re));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Poly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cplx Poly::operator()(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Poly::eval_scale(cplx z) const {
  const double r = std::abs(z);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  return scaled(1.0 / leading());
}

Poly Poly::scaled(double s) const {
  std::vector<double> v = coeffs_;
  for (double& c : v) c *= s;
  return Poly(std::move(v));
}

Poly Poly::reversed(int degree) const {
  std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
  for (int k = 0; k <= this->degree(); ++k) v[degree - k] = coeffs_[k];
  return Poly(std::move(v));
}

std::vector<cplx> Poly::taylor_at(cplx a) const {
  std::vector<cplx> c(coeffs_.begin(), coeffs_.end());
  const int n = degree();
  for (int k = 0; k < n; ++k)
    for (int i = n - 1; i >= k; --i) c[i] += a * c[i + 1];
  return c;
}

std::vector<double> Poly::taylor_scale(double r) const {
  std::vector<double> c;
  for (double a : coeffs_) c.push_back(std::abs(a));
  const int n = degree();
  for (int k = 0; k < n; ++k)
    for (int i = n - 1; i >= k; --i) c[i] += r * c[i + 1];
  return c;
}

namespace {
Poly combine(const Poly& a, const Poly& b, double sign) {
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<double> v(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = a[static_cast<int>(k)];
    const double y = sign * b[static_cast<int>(k)];
    const double s = x + y;
    // Cancellation down to rounding level is an exact zero.
    v[k] = std::abs(s) <= 64.0 * kEps * (std::abs(x) + std::abs(y)) ? 0.0 : s;
  }
  return Poly(std::move(v));
}
}  // namespace

Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, 1.0); }
Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, -1.0); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> v(a.coeffs().size() + b.coeffs().size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) v[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return Poly(std::move(v));
}

DivMod divmod(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
  const int n = num.degree();
  const int d = den.degree();
  if (n < d) return {Poly{}, num};
  std::vector<double> r = num.coeffs();
  std::vector<double> q(static_cast<std::size_t>(n - d) + 1, 0.0);
  const double lead = den.leading();
  for (int k = n - d; k >= 0; --k) {
    const double f = r[k + d] / lead;
    q[k] = f;
    for (int j = 0; j <= d; ++j) r[k + j] -= f * den[j];
    r[k + d] = 0.0;
  }
  r.resize(static_cast<std::size_t>(d));
  return {Poly(std::move(q)), Poly(std::move(r))};
}

int RootSet::total_multiplicity() const {
  int s = 0;
  for (const auto& r : roots) s += r.multiplicity;
  return s;
}

double RegionSpec::depth(cplx z) const {
  return kind == RegionKind::OpenUnitDisc ? 1.0 - std::abs(z) : z.real();
}

bool RegionSpec::marginal(cplx z) const { return std::abs(depth(z)) <= boundary_band; }

void RegionSpec::validate() const {
  if (!(boundary_band >= 0.0 && boundary_band < 0.1))
    throw Error(ErrorKind::InvalidInput, "boundary band must lie in [0, 0.1)");
}

RootSet poly_roots(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "roots of the zero polynomial");
  RootSet out;
  if (p.degree() == 0) return out;

  // Exact roots at the origin come straight from the low-order zeros.
  int zeros_at_origin = 0;
  while (p[zeros_at_origin] == 0.0) ++zeros_at_origin;
  const Poly q(std::vector<double>(p.coeffs().begin() + zeros_at_origin, p.coeffs().end()));
  if (zeros_at_origin > 0) out.roots.push_back({0.0, zeros_at_origin});

  if (q.degree() == 1) {
    out.roots.push_back({cplx(-q[0] / q[1], 0.0), 1});
  } else if (q.degree() > 1) {
    auto found = cluster(q, companion_eigenvalues(q));
    polish_simple(q, found);
    enforce_conjugate_pairs(found);
    out.roots.insert(out.roots.end(), found.begin(), found.end());
  }

  std::sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
    if (a.point.real() != b.point.real()) return a.point.real() < b.point.real();
    return a.point.imag() < b.point.imag();
  });
  for (const auto& r : out.roots) {
    const double s = p.eval_scale(r.point);
    if (s > 0.0) out.residual = std::max(out.residual, std::abs(p(r.point)) / s);
  }
  return out;
}

namespace {
constexpr double kGcdCandidate = 1e-3;
constexpr double kGcdResidual = 1e-10;
}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "gcd of two zero polynomials");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return Poly{1.0};

  // Pairs of roots are candidates within a loose radius; a pair is a common
  // root when the points agree to cluster tolerance or when either root is a
  // backward-stable root of the other polynomial (ill-conditioned roots
  // drift far more than their residual suggests).
  auto ra = poly_roots(a).roots;
  auto rb = poly_roots(b).roots;
  auto residual = [](const Poly& p, cplx z) { return std::abs(p(z)) / p.eval_scale(z); };
  struct Pair {
    double dist;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < ra.size(); ++i)
    for (std::size_t j = 0; j < rb.size(); ++j) {
      const cplx x = ra[i].point, y = rb[j].point;
      const double d = std::abs(x - y);
      const double scale = 1.0 + std::abs(x);
      if (d > kGcdCandidate * scale) continue;
      if (d <= tol::kCluster * scale || std::min(residual(b, x), residual(a, y)) <= kGcdResidual)
        pairs.push_back({d, i, j});
    }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& p, const Pair& q) { return p.dist < q.dist; });
  std::vector<cplx> common;
  for (const auto& pr : pairs) {
    auto& x = ra[pr.i];
    auto& y = rb[pr.j];
    const int m = std::min(x.multiplicity, y.multiplicity);
    if (m <= 0) continue;
    x.multiplicity -= m;
    y.multiplicity -= m;
    common.insert(common.end(), static_cast<std::size_t>(m), x.point);
  }
  return Poly::from_roots(common);
}

RootCount count_roots_in(const RootSet& roots, const RegionSpec& region) {
  RootCount c;
  for (const auto& r : roots.roots) {
    if (region.marginal(r.point))
      c.marginal += r.multiplicity;
    else if (region.inside(r.point))
      c.inside += r.multiplicity;
  }
  return c;
}

RootCount count_roots_in(const Poly& p, const RegionSpec& region) {
  region.validate();
  return count_roots_in(poly_roots(p), region);
}

bool hurwitz_stable(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "Routh test of the zero polynomial");
  const int n = p.degree();
  if (n == 0) return true;

  std::vector<double> desc(p.coeffs().rbegin(), p.coeffs().rend());
  if (desc.front() < 0.0)
    for (double& c : desc) c = -c;
  // Stodola: a Hurwitz polynomial has all coefficients of one strict sign.
  for (double c : desc)
    if (c <= 0.0) return false;

  std::vector<std::vector<double>> rows(2);
  for (int k = 0; k <= n; ++k) rows[k % 2].push_back(desc[k]);
  const std::size_t width = rows[0].size();
  rows[1].resize(width, 0.0);

  for (int i = 2; i <= n; ++i) {
    const auto& up = rows[i - 2];
    const auto& mid = rows[i - 1];
    const double pivot = mid[0];
    std::vector<double> next(width, 0.0);
    double scale0 = 0.0;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      const double a = pivot * up[j + 1];
      const double b = up[0] * mid[j + 1];
      next[j] = (a - b) / pivot;
      if (j == 0) scale0 = (std::abs(a) + std::abs(b)) / std::abs(pivot);
    }
    const double head = next[0];
    if (head == 0.0) return false;
    if (std::abs(head) <= tol::kRouthPivot * scale0)
      throw Error(ErrorKind::MarginalCase, "Routh first-column entry below tolerance");
    if (head < 0.0) return false;
    rows.push_back(std::move(next));
  }
  return true;
}

}  // namespace stabkit
