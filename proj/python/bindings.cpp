#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "crs/deformed.hpp"
#include "crs/io.hpp"
#include "crs/linear_theory.hpp"
#include "crs/solvers.hpp"
#include "suites.hpp"

namespace py = pybind11;
using namespace crs;

namespace {

MixedSign parse_sign(const std::string& s) {
  if (s == "derived") return MixedSign::Plus;
  if (s == "printed") return MixedSign::Minus;
  throw InputError("unknown table: " + s);
}

HarmonicField exact_field(const std::string& text) { return require_exact(parse_field_text(text, ValueMode::Exact)); }

std::string compute(const std::string& field, const std::string& backend, int order, int truncation) {
  if (parse_backend(backend) == Backend::Jet) {
    const HarmonicField u = exact_field(field);
    return to_json(deform_jet({HarmonicField(u.truncation()), u}, order)).dump();
  }
  const NumericField phi = as_numeric(parse_field_text(field, ValueMode::Grid));
  const Grid g(grid_for_degree(3 * std::max(truncation, phi.truncation())));
  return to_json(deform_grid(g, phi), truncation).dump();
}

std::string partial_solve_json(const std::string& phi0, int truncation, double tol) {
  SolveConfig cfg;
  cfg.truncation = truncation;
  cfg.tol = tol;
  return to_json(partial_solve(as_numeric(parse_field_text(phi0, ValueMode::Grid)), cfg)).dump();
}

std::string formal_solve_json(const std::string& u, int truncation, int order) {
  return to_json(formal_solve(exact_field(u), truncation, order)).dump();
}

std::pair<std::string, std::string> second_order(const std::string& u, const std::string& udd) {
  const HarmonicField a = exact_field(u);
  const HarmonicField b = udd.empty() ? HarmonicField(a.truncation()) : exact_field(udd);
  const GaussianRational r = second_order_obstruction(a, b);
  return {r.re_string(), r.im_string()};
}

std::string quadratic_form(const std::string& u, const std::string& table) {
  return rigidity_quadratic_form(exact_field(u), parse_sign(table)).get_str();
}

std::string suite(const std::string& name, int degree, const std::string& table) {
  suites::SuiteResult r;
  if (name == "spectra") r = suites::spectra(degree, suites::parse_table(table));
  else if (name == "kernel") r = suites::kernel(degree);
  else if (name == "image") r = suites::image(degree);
  else if (name == "bounds") r = suites::bounds(degree, 2 * degree);
  else throw InputError("unknown suite: " + name);
  return r.to_json().dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudohermitian invariants of deformed CR 3-spheres";
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<SolverDivergence>(m, "SolverDivergence", PyExc_RuntimeError);
  m.def("dq_block_scalar", [](int p, int q, const std::string& t) { return dq_block_scalar(p, q, parse_sign(t)).get_str(); },
        py::arg("p"), py::arg("q"), py::arg("table") = "derived");
  m.def("p1dq_eigenvalue", [](int p, int q, const std::string& t) { return p1dq_eigenvalue(p, q, parse_sign(t)).get_str(); },
        py::arg("p"), py::arg("q"), py::arg("table") = "derived");
  m.def("sublaplacian_eigenvalue", &sublaplacian_eigenvalue);
  m.def("basis_norm2", [](int p, int q, int mm) { return basis_norm2(p, q, mm).get_str(); });
  m.def("round_trip", [](const std::string& f) { return to_json(exact_field(f)).dump(); });
  m.def("compute", &compute, py::arg("field"), py::arg("backend") = "jet", py::arg("order") = 2, py::arg("truncation") = 8);
  m.def("partial_solve", &partial_solve_json, py::arg("phi0"), py::arg("truncation") = 8, py::arg("tol") = 1e-12);
  m.def("formal_solve", &formal_solve_json, py::arg("u"), py::arg("truncation") = 8, py::arg("order") = 3);
  m.def("second_order_obstruction", &second_order, py::arg("u"), py::arg("udd") = "");
  m.def("rigidity_quadratic_form", &quadratic_form, py::arg("u"), py::arg("table") = "derived");
  m.def("suite", &suite, py::arg("name"), py::arg("degree"), py::arg("table") = "printed");
}
