#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "crs/deformed.hpp"
#include "crs/io.hpp"
#include "crs/solvers.hpp"
#include "suites.hpp"

using namespace crs;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInputError = 2, kDiverged = 3 };

struct Options {
  std::string input, out = "-", backend, table = "printed";
  std::string phi0, phidot, phiddot;
  int degree = -1, order = 4, pmax = 200, qmax = -1, count = 20;
  double tol = -1;
  std::uint64_t seed = 7;
  bool all_rows = false;
};

int emit(const json& j, const Options& o) {
  write_json(j, o.out);
  return kOk;
}

int run_compute(const Options& o) {
  const Backend backend = parse_backend(o.backend.empty() ? "jet" : o.backend);
  const int N = o.degree < 0 ? 8 : o.degree;
  if (N < 4) throw InputError("--degree must be >= 4");
  if (o.order < 2) throw InputError("--order must be >= 2");
  if (backend == Backend::Jet) {
    const HarmonicField u = require_exact(read_field_file(o.input, ValueMode::Exact));
    const auto d = deform_jet({HarmonicField(u.truncation()), u}, o.order);
    json j = to_json(d);
    j["input"] = o.input;
    j["integral_O_pi2_per_order"] = json::array();
    for (const auto& x : integrate(d.O)) j["integral_O_pi2_per_order"].push_back({{"re", x.re_string()}, {"im", x.im_string()}});
    return emit(j, o);
  }
  const NumericField phi = as_numeric(read_field_file(o.input, ValueMode::Grid));
  const Grid g(grid_for_degree(3 * std::max(N, phi.truncation())));
  const auto d = deform_grid(g, phi);
  json j = to_json(d, N);
  j["input"] = o.input;
  const auto io = integrate(d.O);
  j["integral_O"] = {io.real(), io.imag()};
  return emit(j, o);
}

int run_verify(const std::string& which, const Options& o) {
  suites::SuiteResult r;
  if (which == "spectra") {
    r = suites::spectra(o.degree < 0 ? 10 : o.degree, suites::parse_table(o.table));
  } else if (which == "bounds") {
    if (o.pmax < 0) throw InputError("--pmax must be nonnegative");
    r = suites::bounds(o.pmax, o.qmax < 0 ? 2 * o.pmax : o.qmax);
  } else if (which == "identity") {
    r = suites::identity(o.seed, o.count, o.degree < 0 ? 4 : o.degree, o.order, o.tol < 0 ? 1e-9 : o.tol);
  } else if (which == "kernel") {
    r = suites::kernel(o.degree < 0 ? 8 : o.degree);
  } else {
    r = suites::image(o.degree < 0 ? 10 : o.degree);
  }
  std::cout << r.table(o.all_rows);
  if (o.out != "-") write_json(r.to_json(), o.out);
  return r.pass() ? kOk : kVerifyFailed;
}

SolveConfig solve_config(const Options& o) {
  SolveConfig cfg;
  if (o.degree >= 0) cfg.truncation = o.degree;
  if (o.tol >= 0) cfg.tol = o.tol;
  cfg.jet_order = o.order;
  if (!o.backend.empty()) cfg.backend = parse_backend(o.backend);
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return cfg;
}

std::string phi0_path(const Options& o) {
  const std::string& p = o.phi0.empty() ? o.input : o.phi0;
  if (p.empty()) throw InputError("--phi0 is required");
  return p;
}

int run_solve(const Options& o) {
  const SolveConfig cfg = solve_config(o);
  if (cfg.backend == Backend::Jet) {
    const HarmonicField u = require_exact(read_field_file(phi0_path(o), ValueMode::Exact));
    json j = to_json(formal_solve(u, cfg.truncation, cfg.jet_order));
    j["truncation"] = cfg.truncation;
    j["order"] = cfg.jet_order;
    return emit(j, o);
  }
  const SolveReport r = partial_solve(as_numeric(read_field_file(phi0_path(o), ValueMode::Grid)), cfg);
  json j = to_json(r);
  j["truncation"] = cfg.truncation;
  write_json(j, o.out);
  if (!r.converged) {
    std::cerr << "partial solve did not converge after " << r.iterations << " evaluations\n";
    return kDiverged;
  }
  return kOk;
}

int run_kuranishi(const Options& o) {
  const SolveConfig cfg = solve_config(o);
  json j = to_json(kuranishi(as_numeric(read_field_file(phi0_path(o), ValueMode::Grid)), cfg));
  j["truncation"] = cfg.truncation;
  return emit(j, o);
}

int run_rigidity(const Options& o) {
  if (o.phidot.empty()) throw InputError("--phidot is required");
  const SolveConfig cfg = solve_config(o);
  if (cfg.backend == Backend::Grid && !o.backend.empty()) {
    const NumericField phi = as_numeric(read_field_file(o.phidot, ValueMode::Grid));
    json j = to_json(rigidity_certificate(phi, cfg));
    j["truncation"] = cfg.truncation;
    return emit(j, o);
  }
  const HarmonicField u = require_exact(read_field_file(o.phidot, ValueMode::Exact));
  HarmonicField udd(u.truncation());
  if (!o.phiddot.empty()) udd = require_exact(read_field_file(o.phiddot, ValueMode::Exact));
  try {
    const GaussianRational second = second_order_obstruction(u, udd);
    const mpq_class derived = rigidity_quadratic_form(u, MixedSign::Plus);
    const mpq_class printed = rigidity_quadratic_form(u, MixedSign::Minus);
    json j{{"backend", "jet"},
           {"second_order_pi2", {{"re", second.re_string()}, {"im", second.im_string()}}},
           {"second_order_value", second.re().get_d() * std::numbers::pi * std::numbers::pi},
           {"quadratic_form_derived_pi2", derived.get_str()},
           {"quadratic_form_printed_pi2", printed.get_str()},
           {"matches_derived", second == GaussianRational(derived)},
           {"matches_printed", second == GaussianRational(printed)},
           {"l2_norm2_pi2", l2_norm2(u).get_str()},
           {"positive", second.is_real() && sgn(second.re()) > 0}};
    return emit(j, o);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudohermitian invariants of deformed CR 3-spheres"};
  app.require_subcommand(1);
  Options o;

  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "Output path ('-' for stdout)"); };

  auto* compute = app.add_subcommand("compute", "Curvature, torsion, Cartan tensor and obstruction of a deformation");
  compute->add_option("--input", o.input, "HarmonicField JSON")->required();
  compute->add_option("--backend", o.backend, "jet (phi = t u, exact) or grid (phi sampled as given)");
  compute->add_option("--order", o.order, "Jet order K");
  compute->add_option("--degree", o.degree, "Truncation for grid projections");
  add_out(compute);

  auto* verify = app.add_subcommand("verify", "Verification suites");
  verify->require_subcommand(1);
  std::string which;
  auto* v_spectra = verify->add_subcommand("spectra", "Linearization scalars against the table");
  v_spectra->add_option("--degree", o.degree, "Max p+q (default 10)");
  v_spectra->add_option("--table", o.table, "printed or derived")->check(CLI::IsMember({"printed", "derived"}));
  auto* v_bounds = verify->add_subcommand("bounds", "Ratio scans for the coercivity bounds");
  v_bounds->add_option("--pmax", o.pmax, "Max p (default 200)");
  v_bounds->add_option("--qmax", o.qmax, "Max q (default 2 pmax)");
  auto* v_identity = verify->add_subcommand("identity", "Integral identity on random deformations");
  v_identity->add_option("--seed", o.seed, "RNG seed");
  v_identity->add_option("--count", o.count, "Number of deformations");
  v_identity->add_option("--degree", o.degree, "Max degree (default 4)");
  v_identity->add_option("--order", o.order, "Jet order");
  v_identity->add_option("--tol", o.tol, "Grid relative tolerance (default 1e-9)");
  auto* v_kernel = verify->add_subcommand("kernel", "Kernel of DO");
  v_kernel->add_option("--degree", o.degree, "Max degree (default 8)");
  auto* v_image = verify->add_subcommand("image", "Image of DO over DBEprime");
  v_image->add_option("--degree", o.degree, "Max p+q (default 10)");
  for (auto* c : {v_spectra, v_bounds, v_identity, v_kernel, v_image}) {
    c->add_option("--out", o.out, "JSON report path");
    c->add_flag("--all", o.all_rows, "Print passing rows too");
    c->callback([&which, c] { which = c->get_name(); });
  }

  auto add_solver = [&](CLI::App* c) {
    c->add_option("--degree", o.degree, "Truncation N (default 8)");
    c->add_option("--tol", o.tol, "Residual tolerance (default 1e-12)");
    add_out(c);
  };
  auto* solve = app.add_subcommand("solve", "Partial solve for psi");
  solve->add_option("--phi0,--input", o.phi0, "phi0 HarmonicField JSON");
  solve->add_option("--backend", o.backend, "grid (fixed point) or jet (order by order, exact)");
  solve->add_option("--order", o.order, "Jet order K");
  add_solver(solve);
  auto* kur = app.add_subcommand("kuranishi", "Kuranishi map value H2O O(psi + phi0)");
  kur->add_option("--phi0,--input", o.phi0, "phi0 HarmonicField JSON");
  add_solver(kur);
  auto* rig = app.add_subcommand("rigidity", "Second-order obstruction, or a grid certificate");
  rig->add_option("--phidot", o.phidot, "First-order deformation u");
  rig->add_option("--phiddot", o.phiddot, "Second-order deformation (optional)");
  rig->add_option("--backend", o.backend, "jet (default) or grid");
  add_solver(rig);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (compute->parsed()) return run_compute(o);
    if (verify->parsed()) return run_verify(which, o);
    if (solve->parsed()) return run_solve(o);
    if (kur->parsed()) return run_kuranishi(o);
    return run_rigidity(o);
  } catch (const SolverDivergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDiverged;
  } catch (const LeviFormError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
