#include "stabkit/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "stabkit/errors.hpp"

namespace stabkit::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array of numbers");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(number(x, what));
  return v;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

void dump_to(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_to(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_to(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        break;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Poly poly_from(const json& j) { return Poly(numbers(j, "polynomial")); }

RatFunc ratfunc_from(const json& j) {
  if (j.is_number()) return RatFunc(j.get<double>());
  if (j.is_array()) return RatFunc::from_poly(poly_from(j));
  const Poly num = poly_from(field(j, "num"));
  const Poly den = j.contains("den") ? poly_from(j.at("den")) : Poly{1.0};
  return RatFunc(num, den);
}

StateSpace statespace_from(const json& j) {
  const json& a = field(j, "A");
  if (!a.is_array() || a.empty()) bad("A must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(a.size());
  StateSpace s{Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, 1), Eigen::MatrixXd(1, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = numbers(a[i], "A row");
    if (static_cast<Eigen::Index>(row.size()) != n) bad("A must be square");
    for (Eigen::Index k = 0; k < n; ++k) s.A(i, k) = row[k];
  }
  // B and C accept flat vectors or nested single-column/single-row forms.
  auto flat = [&](const json& v, const char* what) {
    json f = json::array();
    for (const auto& x : v) {
      if (x.is_array()) {
        for (const auto& y : x) f.push_back(y);
      } else {
        f.push_back(x);
      }
    }
    const auto out = numbers(f, what);
    if (static_cast<Eigen::Index>(out.size()) != n) bad(std::string(what) + " must have length n");
    return out;
  };
  const auto b = flat(field(j, "B"), "B");
  const auto c = flat(field(j, "C"), "C");
  for (Eigen::Index k = 0; k < n; ++k) {
    s.B(k, 0) = b[k];
    s.C(0, k) = c[k];
  }
  return s;
}

AvoidanceTriple triple_from(const json& j) {
  return {ratfunc_from(field(j, "phi1")), ratfunc_from(field(j, "phi2")), ratfunc_from(field(j, "phi3"))};
}

RegionSpec region_from(const std::string& name, double band) {
  if (name == "disc") return RegionSpec::disc(band);
  if (name == "rhp") return RegionSpec::rhp(band);
  bad("region must be \"disc\" or \"rhp\"");
}

cplx complex_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2) return {number(j[0], "re"), number(j[1], "im")};
  if (j.is_object()) return {number(field(j, "re"), "re"), number(field(j, "im"), "im")};
  bad("complex value must be a number, [re, im] or {\"re\", \"im\"}");
}

SearchSpec searchspec_from(const json& j, double default_band) {
  SearchSpec s;
  const json& plants = field(j, "plants");
  if (!plants.is_array()) bad("plants must be an array");
  for (const auto& p : plants) s.plants.push_back(ratfunc_from(p));
  const double band = j.contains("boundary_band") ? number(j.at("boundary_band"), "boundary_band") : default_band;
  s.region = region_from(j.value("region", std::string("disc")), band);
  if (j.contains("controller_degree")) {
    const auto d = numbers(j.at("controller_degree"), "controller_degree");
    if (d.size() != 2) bad("controller_degree must be [num_degree, den_degree]");
    s.num_degree = static_cast<int>(d[0]);
    s.den_degree = static_cast<int>(d[1]);
  }
  s.require_stable_controller = j.value("require_stable_controller", false);
  s.require_bistable_controller = j.value("require_bistable_controller", false);
  s.budget = j.value("budget", s.budget);
  s.seed = j.value("seed", s.seed);
  s.threads = j.value("threads", 0);
  return s;
}

json to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const Poly& p) {
  json a = json::array();
  for (double c : p.coeffs()) a.push_back(c);
  return a;
}

json to_json(const RatFunc& f) { return {{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

json to_json(const StateSpace& s) {
  json a = json::array(), b = json::array(), c = json::array();
  for (Eigen::Index i = 0; i < s.order(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < s.order(); ++k) row.push_back(s.A(i, k));
    a.push_back(row);
    b.push_back(s.B(i, 0));
    c.push_back(s.C(0, i));
  }
  return {{"A", a}, {"B", b}, {"C", c}};
}

json to_json(const Divisor& d) {
  json a = json::array();
  for (const auto& e : d.entries)
    a.push_back({{"re", e.point.real()}, {"im", e.point.imag()}, {"multiplicity", e.multiplicity}});
  return a;
}

json to_json(const StabReport& r) {
  return {{"stable", r.stable}, {"offending_poles", to_json(r.offending_poles)}, {"marginal", to_json(r.marginal)}};
}

json to_json(const InternalStabReport& r) {
  json g = json::array();
  for (bool b : r.gang_of_four_stable) g.push_back(b);
  return {{"ok", r.ok},
          {"loop_zeros_in_region", to_json(r.loop_zeros_in_region)},
          {"cancellation_cp", to_json(r.cancellation_cp)},
          {"cancellation_pc", to_json(r.cancellation_pc)},
          {"gang_of_four_stable", g},
          {"marginal", to_json(r.marginal)}};
}

json to_json(const InterpolationData& d) {
  json jets = json::array();
  for (const auto& jet : d.jets)
    jets.push_back({{"point", to_json(jet.point)}, {"order", jet.order}, {"ratio", to_json(jet.ratio)}});
  return {{"zeros_divisor", to_json(d.zeros_divisor)},
          {"poles_divisor", to_json(d.poles_divisor)},
          {"ones_divisor", to_json(d.ones_divisor)},
          {"jets", jets},
          {"boundary", to_json(d.boundary)}};
}

json to_json(const GoldbergProfile& p) {
  const auto& c = p.classes;
  return {{"rho", p.rho},
          {"n_zeros", p.n_zeros},
          {"n_poles", p.n_poles},
          {"n_ones", p.n_ones},
          {"N0", p.N0},
          {"N1", p.N1},
          {"gamma_radius", p.gamma_radius()},
          {"classes", {{"F0", c.F0}, {"F1", c.F1}, {"F2", c.F2}, {"F3", c.F3}, {"F4", c.F4}}}};
}

json to_json(const ConstantsTable& k) {
  return {{"A0", k.A0},
          {"A2_lower", k.A2_lower},
          {"A2_upper_mu", k.A2_upper_mu},
          {"bermant_delta0", k.bermant_delta0},
          {"caratheodory", k.caratheodory},
          {"chocolate_lower", k.chocolate_lower},
          {"chocolate_upper", k.chocolate_upper}};
}

json to_json(const Verdict& v) {
  return {{"status", to_string(v.status)}, {"threshold", v.threshold}, {"citation", v.citation}};
}

json to_json(const Certificate& c) {
  json reports = json::array();
  for (const auto& r : c.per_plant) reports.push_back(to_json(r));
  return {{"controller", to_json(c.controller)}, {"per_plant", reports}, {"margin", c.margin}};
}

json to_json(const SearchStats& s) {
  return {{"evaluations", s.evaluations}, {"restarts", s.restarts}, {"best_margin", s.best_margin}};
}

std::string dump(const json& j) {
  std::string out;
  dump_to(j, out);
  return out;
}

}  // namespace stabkit::json_io
