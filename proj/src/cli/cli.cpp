#include "stabkit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "stabkit/errors.hpp"
#include "stabkit/json_io.hpp"

namespace stabkit::cli {

namespace {

using json_io::json;
using json_io::to_json;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kUnknown = 2;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

// A document argument is literal JSON, @path, or - for standard input.
json read_doc(const std::string& arg) {
  std::string text;
  if (arg == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) bad("cannot read " + arg.substr(1));
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    text = arg;
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

double default_band() {
  const char* env = std::getenv("STABKIT_TOLERANCE");
  if (!env || !*env) return tol::kBoundaryBand;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0') bad("STABKIT_TOLERANCE is not a number");
  return v;
}

struct Common {
  std::string region = "disc";
  bool z_inverse = false;
  bool csv = false;

  RegionSpec region_spec() const {
    auto r = json_io::region_from(region, default_band());
    r.validate();
    return r;
  }
  RatFunc ratfunc(const std::string& arg) const {
    const RatFunc f = json_io::ratfunc_from(read_doc(arg));
    return z_inverse ? f.substitute_inverse() : f;
  }
};

void add_region(CLI::App* sub, Common& c) {
  sub->add_option("--region", c.region, "Region: disc (open unit disc) or rhp (open right half-plane)")
      ->check(CLI::IsMember({"disc", "rhp"}));
}

void add_z_inverse(CLI::App* sub, Common& c) {
  sub->add_flag("--z-inverse", c.z_inverse, "Substitute z -> 1/z in every rational input before use");
}

std::string location(const RegionSpec& r, cplx z) {
  if (r.marginal(z)) return "boundary";
  return r.inside(z) ? "inside" : "outside";
}

void merge(json& into, const json& from) {
  for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = it.value();
}

struct Outcome {
  json doc;
  int code = kOk;
  std::string text;  // CSV output replaces the JSON document when set
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"stabkit: stabilization questions for SISO rational transfer functions", "stabkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "stabkit 0.1.0");

  Common common;
  std::string a1, a2, family, param, f_arg, input_arg, x0_arg;
  bool no_infinity_zero = false;
  int impulse = -1, step = -1;
  Outcome result;

  auto* stability = app.add_subcommand("stability", "Stability of a transfer function in the region");
  stability->add_option("f", a1, "RatFunc JSON")->required();
  add_region(stability, common);
  add_z_inverse(stability, common);
  stability->callback([&] { result.doc = to_json(is_stable(common.ratfunc(a1), common.region_spec())); });

  auto* pip = app.add_subcommand("pip", "Parity interlacing test (strong stabilizability in the RHP)");
  pip->add_option("f", a1, "RatFunc JSON")->required();
  pip->add_flag("--no-infinity-zero", no_infinity_zero, "Do not count infinity as a zero of a proper plant");
  add_z_inverse(pip, common);
  pip->callback([&] {
    const bool ok = pip_check(common.ratfunc(a1), !no_infinity_zero);
    result.doc = {{"pip", ok}, {"strongly_stabilizable", ok}, {"infinity_is_zero", !no_infinity_zero}};
  });

  auto* stabcheck = app.add_subcommand("stabcheck", "Internal stabilization check of plant p by controller c");
  stabcheck->add_option("p", a1, "plant RatFunc JSON")->required();
  stabcheck->add_option("c", a2, "controller RatFunc JSON")->required();
  add_region(stabcheck, common);
  add_z_inverse(stabcheck, common);
  stabcheck->callback([&] {
    result.doc = to_json(internal_check(common.ratfunc(a1), common.ratfunc(a2), common.region_spec()));
  });

  auto* gangfour = app.add_subcommand("gangfour", "The four closed-loop transfer functions");
  gangfour->add_option("p", a1, "plant RatFunc JSON")->required();
  gangfour->add_option("c", a2, "controller RatFunc JSON")->required();
  add_region(gangfour, common);
  add_z_inverse(gangfour, common);
  gangfour->callback([&] {
    const auto region = common.region_spec();
    const auto g = gang_of_four(common.ratfunc(a1), common.ratfunc(a2));
    static const char* labels[] = {"pc/(1-pc)", "c/(1-pc)", "p/(1-pc)", "1/(1-pc)"};
    json list = json::array();
    for (int i = 0; i < 4; ++i) {
      const auto rep = is_stable(g[i], region);
      list.push_back({{"label", labels[i]}, {"tf", to_json(g[i])}, {"stable", rep.stable}});
    }
    result.doc = {{"gang_of_four", list}};
  });

  auto* theorem1 = app.add_subcommand("theorem1", "Interpolation data of an avoidance triple");
  theorem1->add_option("triple", a1, "{\"phi1\":..,\"phi2\":..,\"phi3\":..}")->required();
  theorem1->add_option("--f", f_arg, "Candidate f: report avoidance, g and its admissibility");
  theorem1->callback([&] {
    const auto t = json_io::triple_from(read_doc(a1));
    json points = json::array();
    for (const cplx z : triple_intersections(t)) points.push_back(to_json(z));
    result.doc = {{"triple_intersections", points}};
    const auto data = interpolation_data(t);
    merge(result.doc, to_json(data));
    if (!f_arg.empty()) {
      const RatFunc f = json_io::ratfunc_from(read_doc(f_arg));
      const RatFunc g = cross_ratio_fg(f, t);
      result.doc["candidate"] = {{"f", to_json(f)},
                                 {"avoids", verify_avoidance(f, t, RegionSpec::disc())},
                                 {"g", to_json(g)},
                                 {"g_admissible", verify_g(g, data)}};
    }
  });

  auto* goldberg = app.add_subcommand("goldberg", "Goldberg profile: preimages, windings and classes");
  goldberg->add_option("f", a1, "RatFunc JSON")->required();
  add_z_inverse(goldberg, common);
  goldberg->callback([&] { result.doc = to_json(goldberg_profile(common.ratfunc(a1))); });

  auto* consts = app.add_subcommand("constants", "Table of constants");
  consts->callback([&] { result.doc = to_json(constants()); });

  auto* decide = app.add_subcommand("decide", "Decide an example family at a parameter");
  decide->add_option("family", family, "blondel | patel | bistable | chocolate")
      ->required()
      ->check(CLI::IsMember({"blondel", "patel", "bistable", "chocolate"}));
  decide->add_option("parameter", param, "number; bistable also takes [re, im]")->required();
  decide->callback([&] {
    const json p = read_doc(param);
    Verdict v;
    if (family == "bistable") {
      v = bistable_example_decision(json_io::complex_from(p));
    } else {
      if (!p.is_number()) bad("parameter must be a number");
      const double x = p.get<double>();
      v = family == "blondel" ? blondel_example_decision(x)
          : family == "patel" ? patel_example_decision(x)
                              : chocolate_decision(x);
    }
    result.doc = {{"family", family}, {"parameter", p}};
    merge(result.doc, to_json(v));
    if (v.status == Status::Unknown) result.code = kUnknown;
  });

  auto* searchc = app.add_subcommand("search", "Certified numerical search for a controller");
  searchc->add_option("spec", a1, "SearchSpec JSON")->required();
  searchc->callback([&] {
    const auto spec = json_io::searchspec_from(read_doc(a1), default_band());
    const auto r = search(spec);
    if (r.found()) {
      result.doc = {{"status", "found"}};
      merge(result.doc, to_json(*r.certificate));
    } else {
      result.doc = {{"status", "not_found"}};
    }
    result.doc["statistics"] = to_json(r.stats);
  });

  auto* realizec = app.add_subcommand("realize", "Controllable canonical state-space realization");
  realizec->add_option("f", a1, "proper RatFunc JSON")->required();
  add_z_inverse(realizec, common);
  realizec->callback([&] { result.doc = to_json(realize(common.ratfunc(a1))); });

  auto* tf = app.add_subcommand("tf", "Transfer function C(zI - A)^-1 B of a state-space system");
  tf->add_option("system", a1, "StateSpace JSON")->required();
  tf->callback([&] { result.doc = to_json(transfer_function(json_io::statespace_from(read_doc(a1)))); });

  auto* simulate = app.add_subcommand("simulate", "Discrete-time simulation x(n+1) = Ax(n) + Bu(n), y = Cx");
  simulate->add_option("system", a1, "StateSpace JSON, or a proper RatFunc JSON to realize first")->required();
  auto* in_opt = simulate->add_option("--input", input_arg, "input sequence u as a JSON array");
  auto* imp_opt = simulate->add_option("--impulse", impulse, "unit impulse input of this length");
  auto* step_opt = simulate->add_option("--step", step, "unit step input of this length");
  in_opt->excludes(imp_opt)->excludes(step_opt);
  imp_opt->excludes(step_opt);
  simulate->add_option("--x0", x0_arg, "initial state as a JSON array (default zero)");
  simulate->add_flag("--csv", common.csv, "CSV output with columns n,u,y");
  simulate->callback([&] {
    const json doc = read_doc(a1);
    const StateSpace s = doc.contains("A") ? json_io::statespace_from(doc) : realize(json_io::ratfunc_from(doc));
    std::vector<double> u;
    if (!input_arg.empty()) {
      const json uj = read_doc(input_arg);
      if (!uj.is_array()) bad("--input must be a JSON array");
      for (const auto& x : uj) {
        if (!x.is_number()) bad("--input must contain numbers");
        u.push_back(x.get<double>());
      }
    } else if (impulse > 0) {
      u.assign(impulse, 0.0);
      u[0] = 1.0;
    } else if (step > 0) {
      u.assign(step, 1.0);
    } else {
      bad("simulate needs --input, --impulse N or --step N with N >= 1");
    }
    std::optional<Eigen::VectorXd> x0;
    if (!x0_arg.empty()) {
      const json xj = read_doc(x0_arg);
      if (!xj.is_array()) bad("--x0 must be a JSON array");
      x0 = Eigen::VectorXd(static_cast<Eigen::Index>(xj.size()));
      for (std::size_t i = 0; i < xj.size(); ++i) {
        if (!xj[i].is_number()) bad("--x0 must contain numbers");
        (*x0)(static_cast<Eigen::Index>(i)) = xj[i].get<double>();
      }
    }
    const auto y = simulate_discrete(s, u, x0);
    if (common.csv) {
      std::string text = "n,u,y\n";
      char buf[96];
      for (std::size_t n = 0; n < y.size(); ++n) {
        if (n < u.size())
          std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", n, u[n], y[n]);
        else
          std::snprintf(buf, sizeof buf, "%zu,,%.17g\n", n, y[n]);
        text += buf;
      }
      result.text = text;
    } else {
      json uj = json::array(), yj = json::array();
      for (double x : u) uj.push_back(x);
      for (double x : y) yj.push_back(x);
      result.doc = {{"u", uj}, {"y", yj}};
    }
  });

  auto* polezero = app.add_subcommand("polezero", "Zeros, poles and 1-points with their location");
  polezero->add_option("f", a1, "RatFunc JSON")->required();
  add_region(polezero, common);
  add_z_inverse(polezero, common);
  polezero->add_flag("--csv", common.csv, "CSV output with columns re,im,multiplicity,type");
  polezero->callback([&] {
    const RatFunc f = common.ratfunc(a1);
    const auto region = common.region_spec();
    json entries = json::array();
    std::string text = "re,im,multiplicity,type\n";
    auto emit = [&](const Poly& p, const char* type) {
      if (p.degree() <= 0) return;
      for (const auto& r : poly_roots(p).roots) {
        entries.push_back({{"re", r.point.real()},
                           {"im", r.point.imag()},
                           {"multiplicity", r.multiplicity},
                           {"type", type},
                           {"location", location(region, r.point)}});
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%s\n", r.point.real(), r.point.imag(), r.multiplicity, type);
        text += buf;
      }
    };
    emit(f.num(), "zero");
    emit(f.den(), "pole");
    emit(f.num() - f.den(), "one");
    if (common.csv)
      result.text = text;
    else
      result.doc = {{"entries", entries}};
  });

  auto* mobius = app.add_subcommand("mobius", "Precompose with w(z) = (1 - z)/(1 + z) (D <-> RHP)");
  mobius->add_option("f", a1, "RatFunc JSON")->required();
  add_z_inverse(mobius, common);
  mobius->callback([&] { result.doc = to_json(mobius_transport(common.ratfunc(a1))); });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (!result.text.empty())
    out << result.text;
  else
    out << json_io::dump(result.doc) << "\n";
  return result.code;
}

}  // namespace stabkit::cli
