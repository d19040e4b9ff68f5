#include "stabkit/searchlab.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "stabkit/errors.hpp"

namespace stabkit {

namespace {

constexpr int kGridPoints = 720;
constexpr long kEvalsPerRestart = 200;
constexpr double kStartRange = 3.0;
constexpr double kMarginCap = 1.0;
constexpr double kCountPenalty = 0.5;
constexpr double kDegenerate = -10.0;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-based draw k of restart r: uniform in [-range, range).
double start_coefficient(std::uint64_t seed, int restart, int k) {
  const std::uint64_t key = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(restart)));
  const std::uint64_t bits = splitmix64(key + static_cast<std::uint64_t>(k) * 0xD1B54A32D192ED03ULL);
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
  return kStartRange * (2.0 * u - 1.0);
}

std::vector<cplx> boundary_grid(RegionKind kind) {
  std::vector<cplx> g;
  g.reserve(kGridPoints);
  for (int k = 0; k < kGridPoints; ++k) {
    const double theta = 2.0 * std::numbers::pi * (k + 0.5) / kGridPoints;
    if (kind == RegionKind::OpenUnitDisc)
      g.push_back(std::polar(1.0, theta));
    else
      g.emplace_back(0.0, std::tan(theta / 2.0));
  }
  return g;
}

struct Problem {
  const SearchSpec& spec;
  std::vector<cplx> grid;
};

// Margin of a raw controller num/den; `violations` counts controller roots in
// the region that the spec forbids.
double raw_margin(const Poly& nc, const Poly& dc, const Problem& pr, int* violations) {
  const RegionSpec& region = pr.spec.region;
  double m = std::numeric_limits<double>::infinity();
  auto root_margin = [&](const Poly& q) {
    if (q.degree() <= 0) return;
    for (const auto& r : poly_roots(q).roots) {
      const double d = region.depth(r.point);
      m = std::min(m, -d);
      if (violations && d > -region.boundary_band) *violations += r.multiplicity;
    }
  };
  for (const auto& p : pr.spec.plants) {
    const Poly chi = p.den() * dc - p.num() * nc;
    if (chi.is_zero()) return kDegenerate;
    if (chi.degree() > 0)
      for (const auto& r : poly_roots(chi).roots) m = std::min(m, -region.depth(r.point));
    for (const cplx z : pr.grid) {
      const double den = std::abs(dc(z) * p.den()(z));
      if (den < std::numeric_limits<double>::min()) continue;
      m = std::min(m, std::abs(chi(z)) / den);
    }
  }
  if (pr.spec.require_stable_controller || pr.spec.require_bistable_controller) root_margin(dc);
  if (pr.spec.require_bistable_controller) {
    if (nc.is_zero()) return kDegenerate;
    root_margin(nc);
  }
  return m;
}

struct Layout {
  int nn, nd;
  int dim() const { return nn + 1 + nd; }
  Poly num(const gsl_vector* x) const {
    std::vector<double> c(nn + 1);
    for (int k = 0; k <= nn; ++k) c[k] = gsl_vector_get(x, k);
    return Poly(std::move(c));
  }
  Poly den(const gsl_vector* x) const {
    std::vector<double> c(nd + 1, 1.0);
    for (int k = 1; k <= nd; ++k) c[k] = gsl_vector_get(x, nn + k);
    return Poly(std::move(c));
  }
};

struct Eval {
  const Problem* pr;
  Layout layout;
  long count = 0;
};

double objective(const gsl_vector* x, void* params) {
  auto* e = static_cast<Eval*>(params);
  ++e->count;
  for (std::size_t i = 0; i < x->size; ++i)
    if (!std::isfinite(gsl_vector_get(x, i))) return 1e3;
  int violations = 0;
  double m;
  try {
    m = raw_margin(e->layout.num(x), e->layout.den(x), *e->pr, &violations);
  } catch (const Error&) {
    return 1e3;
  }
  if (!std::isfinite(m)) m = kMarginCap;
  return -std::min(m, kMarginCap) + kCountPenalty * violations;
}

struct RestartResult {
  long evaluations = 0;
  double margin = -std::numeric_limits<double>::infinity();
  std::optional<Certificate> certificate;
};

RestartResult run_restart(const Problem& pr, int restart, long evals) {
  const SearchSpec& spec = pr.spec;
  Eval e{&pr, {spec.num_degree, spec.den_degree}};
  const int n = e.layout.dim();
  gsl_vector* x = gsl_vector_alloc(n);
  gsl_vector* step = gsl_vector_alloc(n);
  for (int k = 0; k < n; ++k) gsl_vector_set(x, k, start_coefficient(spec.seed, restart, k));
  gsl_vector_set_all(step, 1.0);

  gsl_multimin_function fn{&objective, static_cast<std::size_t>(n), &e};
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
  gsl_multimin_fminimizer_set(s, &fn, x, step);
  while (e.count < evals) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    if (s->fval <= -kMarginCap) break;
    if (gsl_multimin_fminimizer_size(s) < 1e-12) break;
  }

  RestartResult out;
  out.evaluations = e.count;
  try {
    const RatFunc c(e.layout.num(s->x), e.layout.den(s->x));
    out.margin = stabilization_margin(c, spec);
    if (auto r = certify(c, spec); std::holds_alternative<Certificate>(r))
      out.certificate = std::get<Certificate>(std::move(r));
  } catch (const Error&) {
  }
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return out;
}

}  // namespace

void SearchSpec::validate() const {
  if (plants.empty() || plants.size() > 3)
    throw Error(ErrorKind::InvalidSpec, "a search takes between one and three plants");
  if (num_degree < 0 || num_degree > 8 || den_degree < 0 || den_degree > 8)
    throw Error(ErrorKind::InvalidSpec, "controller degree bounds must lie in [0, 8]");
  if (budget < 1) throw Error(ErrorKind::InvalidSpec, "budget must be at least 1");
  if (threads < 0) throw Error(ErrorKind::InvalidSpec, "threads must be nonnegative");
  try {
    region.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidSpec, e.what());
  }
}

double stabilization_margin(const RatFunc& c, const SearchSpec& spec) {
  spec.validate();
  const Problem pr{spec, boundary_grid(spec.region.kind)};
  return raw_margin(c.num(), c.den(), pr, nullptr);
}

std::variant<Certificate, Rejection> certify(const RatFunc& c, const SearchSpec& spec) {
  spec.validate();
  Certificate cert{c, {}, 0.0};
  for (std::size_t i = 0; i < spec.plants.size(); ++i) {
    const int idx = static_cast<int>(i);
    InternalStabReport rep;
    try {
      rep = internal_check(spec.plants[i], c, spec.region);
    } catch (const Error& e) {
      return Rejection{idx, e.what(), std::nullopt};
    }
    if (!rep.ok) return Rejection{idx, "controller does not internally stabilize the plant", rep};
    if (!rep.marginal.empty()) return Rejection{idx, "closed loop has roots in the boundary band", rep};
    cert.per_plant.push_back(std::move(rep));
  }
  auto clear = [&](const Poly& q) {
    if (q.degree() <= 0) return true;
    const auto n = count_roots_in(q, spec.region);
    return n.inside == 0 && n.marginal == 0;
  };
  if ((spec.require_stable_controller || spec.require_bistable_controller) && !clear(c.den()))
    return Rejection{-1, "controller has poles in the closed region", std::nullopt};
  if (spec.require_bistable_controller && (c.is_zero() || !clear(c.num())))
    return Rejection{-1, "controller has zeros in the closed region", std::nullopt};
  cert.margin = stabilization_margin(c, spec);
  if (!(cert.margin > 0.0)) return Rejection{-1, "stabilization margin is not positive", std::nullopt};
  return cert;
}

SearchResult search(const SearchSpec& spec) {
  spec.validate();
  const Problem pr{spec, boundary_grid(spec.region.kind)};
  const long per = std::min(spec.budget, kEvalsPerRestart);
  const int restarts = static_cast<int>(std::max(1L, spec.budget / kEvalsPerRestart));
  const int workers =
      spec.threads > 0 ? spec.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int batch = 2 * workers;

  SearchResult result;
  long spent = 0;
  for (int first = 0; first < restarts; first += batch) {
    const int count = std::min(batch, restarts - first);
    std::vector<RestartResult> out(count);
    std::atomic<int> next{0};
    auto work = [&] {
      for (int i = next++; i < count; i = next++) out[i] = run_restart(pr, first + i, per);
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (int w = 0; w < std::min(workers, count); ++w) pool.emplace_back(work);
    }
    for (int i = 0; i < count; ++i) {
      spent += out[i].evaluations;
      result.stats.best_margin =
          (first + i == 0) ? out[i].margin : std::max(result.stats.best_margin, out[i].margin);
      if (out[i].certificate) {
        result.certificate = std::move(out[i].certificate);
        result.stats.evaluations = spent;
        result.stats.restarts = first + i + 1;
        result.stats.best_margin = result.certificate->margin;
        return result;
      }
    }
  }
  result.stats.evaluations = spent;
  result.stats.restarts = restarts;
  return result;
}

}  // namespace stabkit
