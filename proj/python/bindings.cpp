#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "stabkit/cli.hpp"
#include "stabkit/errors.hpp"
#include "stabkit/json_io.hpp"

namespace py = pybind11;
using namespace stabkit;

namespace {

// Reports cross the boundary as plain dicts with the CLI's field names.
py::object to_py(const json_io::json& j) {
  return py::module_::import("json").attr("loads")(json_io::dump(j));
}

RegionSpec region(const std::string& name, double band) {
  auto r = json_io::region_from(name, band);
  r.validate();
  return r;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "stabkit core bindings";
  py::register_exception<Error>(m, "StabkitError", PyExc_ValueError);

  py::class_<Poly>(m, "Poly")
      .def(py::init<std::vector<double>>(), py::arg("coeffs"))
      .def_property_readonly("coeffs", &Poly::coeffs)
      .def_property_readonly("degree", &Poly::degree)
      .def("__call__", py::overload_cast<cplx>(&Poly::operator(), py::const_))
      .def("__repr__", [](const Poly& p) { return "Poly(" + json_io::dump(json_io::to_json(p)) + ")"; });

  py::class_<RatFunc>(m, "RatFunc")
      .def(py::init<const Poly&, const Poly&>(), py::arg("num"), py::arg("den"))
      .def(py::init([](std::vector<double> num, std::vector<double> den) { return RatFunc(Poly(num), Poly(den)); }),
           py::arg("num"), py::arg("den") = std::vector<double>{1.0})
      .def(py::init<double>())
      .def_static("z", &RatFunc::z)
      .def_property_readonly("num", [](const RatFunc& f) { return f.num().coeffs(); })
      .def_property_readonly("den", [](const RatFunc& f) { return f.den().coeffs(); })
      .def("__call__",
           [](const RatFunc& f, cplx z) -> py::object {
             const auto v = f.eval_sphere(z);
             if (v.infinite) return py::float_(INFINITY);
             return py::cast(v.value);
           })
      .def("is_proper", [](const RatFunc& f) { return is_proper(f); })
      .def("substitute_inverse", &RatFunc::substitute_inverse)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__repr__", [](const RatFunc& f) { return "RatFunc(" + json_io::dump(json_io::to_json(f)) + ")"; });
  py::implicitly_convertible<double, RatFunc>();

  m.def(
      "poly_roots",
      [](const std::vector<double>& c) {
        std::vector<std::pair<cplx, int>> out;
        for (const auto& r : poly_roots(Poly(c)).roots) out.emplace_back(r.point, r.multiplicity);
        return out;
      },
      py::arg("coeffs"), "Roots with multiplicities of a polynomial in ascending coefficients.");
  m.def("hurwitz_stable", [](const std::vector<double>& c) { return hurwitz_stable(Poly(c)); }, py::arg("coeffs"));

  m.def(
      "is_stable",
      [](const RatFunc& p, const std::string& r, double band) {
        return to_py(json_io::to_json(is_stable(p, region(r, band))));
      },
      py::arg("p"), py::arg("region") = "disc", py::arg("band") = tol::kBoundaryBand);
  m.def(
      "internal_check",
      [](const RatFunc& p, const RatFunc& c, const std::string& r, double band) {
        return to_py(json_io::to_json(internal_check(p, c, region(r, band))));
      },
      py::arg("p"), py::arg("c"), py::arg("region") = "disc", py::arg("band") = tol::kBoundaryBand);
  m.def(
      "avoids",
      [](const RatFunc& c, const RatFunc& q, const std::string& r, double band) {
        return avoids(c, q, region(r, band));
      },
      py::arg("c"), py::arg("q"), py::arg("region") = "disc", py::arg("band") = tol::kBoundaryBand);
  m.def("closed_loop", &closed_loop, py::arg("p"), py::arg("c"));
  m.def("gang_of_four", &gang_of_four, py::arg("p"), py::arg("c"));
  m.def("pip_check", &pip_check, py::arg("p"), py::arg("infinity_is_zero") = true);
  m.def("mobius_transport", &mobius_transport, py::arg("f"));

  m.def(
      "realize",
      [](const RatFunc& p) {
        const auto s = realize(p);
        return py::make_tuple(s.A, s.B, s.C);
      },
      py::arg("p"), "Controllable canonical (A, B, C).");
  m.def(
      "transfer_function",
      [](Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C) { return transfer_function({A, B, C}); },
      py::arg("A"), py::arg("B"), py::arg("C"));
  m.def(
      "simulate",
      [](Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C, const std::vector<double>& u,
         std::optional<Eigen::VectorXd> x0) { return simulate_discrete({A, B, C}, u, x0); },
      py::arg("A"), py::arg("B"), py::arg("C"), py::arg("u"), py::arg("x0") = py::none());

  m.def(
      "interpolation_data",
      [](const RatFunc& p1, const RatFunc& p2, const RatFunc& p3) {
        return to_py(json_io::to_json(interpolation_data({p1, p2, p3})));
      },
      py::arg("phi1"), py::arg("phi2"), py::arg("phi3"));
  m.def(
      "cross_ratio_fg",
      [](const RatFunc& f, const RatFunc& p1, const RatFunc& p2, const RatFunc& p3) {
        return cross_ratio_fg(f, {p1, p2, p3});
      },
      py::arg("f"), py::arg("phi1"), py::arg("phi2"), py::arg("phi3"));
  m.def(
      "inverse_cross_ratio",
      [](const RatFunc& g, const RatFunc& p1, const RatFunc& p2, const RatFunc& p3) {
        return inverse_cross_ratio(g, {p1, p2, p3});
      },
      py::arg("g"), py::arg("phi1"), py::arg("phi2"), py::arg("phi3"));
  m.def(
      "verify_g",
      [](const RatFunc& g, const RatFunc& p1, const RatFunc& p2, const RatFunc& p3) {
        return verify_g(g, interpolation_data({p1, p2, p3}));
      },
      py::arg("g"), py::arg("phi1"), py::arg("phi2"), py::arg("phi3"));
  m.def("goldberg_profile", [](const RatFunc& f) { return to_py(json_io::to_json(goldberg_profile(f))); },
        py::arg("f"));

  m.def("constants", [] { return to_py(json_io::to_json(constants())); });
  m.def("decide", [](const std::string& family, py::object param) {
    Verdict v;
    if (family == "bistable")
      v = bistable_example_decision(param.cast<cplx>());
    else if (family == "blondel")
      v = blondel_example_decision(param.cast<double>());
    else if (family == "patel")
      v = patel_example_decision(param.cast<double>());
    else if (family == "chocolate")
      v = chocolate_decision(param.cast<double>());
    else
      throw Error(ErrorKind::InvalidInput, "unknown family " + family);
    return to_py(json_io::to_json(v));
  });

  m.def(
      "search",
      [](const std::string& spec_json) {
        const auto spec = json_io::searchspec_from(json_io::json::parse(spec_json), tol::kBoundaryBand);
        SearchResult r;
        {
          py::gil_scoped_release release;
          r = search(spec);
        }
        json_io::json doc = {{"status", r.found() ? "found" : "not_found"}};
        if (r.found()) {
          const auto c = json_io::to_json(*r.certificate);
          for (auto it = c.begin(); it != c.end(); ++it) doc[it.key()] = it.value();
        }
        doc["statistics"] = json_io::to_json(r.stats);
        return to_py(doc);
      },
      py::arg("spec_json"), "Run a certified search; the spec uses the CLI's SearchSpec JSON.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a stabkit command in-process; returns (exit_code, stdout, stderr).");
}
