#include "crs/io.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace crs {

namespace {

std::string where(std::size_t index) { return "coefficients[" + std::to_string(index) + "]"; }

int read_int(const json& e, const char* key, std::size_t index) {
  if (!e.contains(key)) throw InputError(where(index) + ": missing \"" + key + "\"");
  const json& v = e.at(key);
  if (!v.is_number_integer()) throw InputError(where(index) + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

// Exact value, or nullopt for a float (only allowed in grid mode).
std::optional<mpq_class> read_value(const json& e, const char* key, std::size_t index, ValueMode mode, double& as_float) {
  if (!e.contains(key)) {
    as_float = 0;
    return mpq_class(0);
  }
  const json& v = e.at(key);
  if (v.is_string()) {
    try {
      mpq_class x = parse_rational(v.get<std::string>());
      as_float = x.get_d();
      return x;
    } catch (const std::invalid_argument& err) {
      throw InputError(where(index) + ": \"" + key + "\": " + err.what());
    }
  }
  if (v.is_number_integer()) {
    as_float = v.get<double>();
    return mpq_class(v.get<long>());
  }
  if (v.is_number_float()) {
    if (mode != ValueMode::Grid)
      throw InputError(where(index) + ": \"" + key + "\" is a float; floats are accepted only in grid mode");
    as_float = v.get<double>();
    return std::nullopt;
  }
  throw InputError(where(index) + ": \"" + key + "\" must be a rational string or a number");
}

std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json gaussian_json(const GaussianRational& z) { return json{{"re", z.re_string()}, {"im", z.im_string()}}; }

}  // namespace

ParsedField parse_field(const json& j, ValueMode mode) {
  if (!j.is_object()) throw InputError("field: expected a JSON object");
  if (!j.contains("truncation")) throw InputError("field: missing \"truncation\"");
  if (!j.at("truncation").is_number_integer()) throw InputError("field: \"truncation\" must be an integer");
  const int N = j.at("truncation").get<int>();
  if (N < 0) throw InputError("field: \"truncation\" must be nonnegative");
  const json coeffs = j.value("coefficients", json::array());
  if (!coeffs.is_array()) throw InputError("field: \"coefficients\" must be an array");

  HarmonicField exact(N);
  NumericField numeric(N);
  bool any_float = false;
  std::set<BlockKey> seen;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const json& e = coeffs[i];
    if (!e.is_object()) throw InputError(where(i) + ": expected an object");
    const BlockKey k{read_int(e, "p", i), read_int(e, "q", i), read_int(e, "m", i)};
    if (!valid_key(k)) throw InputError(where(i) + ": invalid (p,q,m); need p,q >= 0 and -q <= m <= p");
    if (k.p + k.q > N) throw InputError(where(i) + ": block p+q exceeds the truncation");
    if (!seen.insert(k).second) throw InputError(where(i) + ": duplicate (p,q,m)");
    double re_f = 0, im_f = 0;
    auto re = read_value(e, "re", i, mode, re_f);
    auto im = read_value(e, "im", i, mode, im_f);
    if (!re || !im) any_float = true;
    if (re && im) exact.set(k, GaussianRational(*re, *im));
    numeric.set(k, {re_f, im_f});
  }
  if (any_float) return numeric;
  return exact;
}

ParsedField parse_field_text(const std::string& text, ValueMode mode) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    throw InputError("malformed JSON at " + location(text, err.byte > 0 ? err.byte - 1 : 0) + ": " + err.what());
  }
  return parse_field(j, mode);
}

ParsedField read_field_file(const std::string& path, ValueMode mode) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_field_text(ss.str(), mode);
  } catch (const InputError& err) {
    throw InputError(path + ": " + err.what());
  }
}

HarmonicField require_exact(const ParsedField& f) {
  if (const auto* h = std::get_if<HarmonicField>(&f)) return *h;
  throw InputError("exact coefficients required; floats are accepted only in grid mode");
}

NumericField as_numeric(const ParsedField& f) {
  if (const auto* h = std::get_if<HarmonicField>(&f)) return to_numeric(*h);
  return std::get<NumericField>(f);
}

json to_json(const HarmonicField& f) {
  json c = json::array();
  for (const auto& [k, v] : f.coefficients())
    c.push_back({{"p", k.p}, {"q", k.q}, {"m", k.m}, {"re", v.re_string()}, {"im", v.im_string()}});
  return json{{"truncation", f.truncation()}, {"coefficients", c}};
}

json to_json(const NumericField& f) {
  json c = json::array();
  for (const auto& [k, v] : f.coefficients())
    c.push_back({{"p", k.p}, {"q", k.q}, {"m", k.m}, {"re", v.real()}, {"im", v.imag()}});
  return json{{"truncation", f.truncation()}, {"coefficients", c}};
}

json to_json(const SolveReport& r) {
  return json{{"converged", r.converged},
              {"diverged", r.diverged},
              {"iterations", r.iterations},
              {"variant", r.variant},
              {"grid", {{"n_eta", r.grid.n_eta}, {"n_xi", r.grid.n_xi}, {"exactness_degree", r.grid.exactness_degree()}}},
              {"residuals", r.residuals},
              {"contraction_ratio", r.contraction_ratio},
              {"psi_l2", l2_norm(r.psi)},
              {"kuranishi_l2", l2_norm(r.kuranishi)},
              {"integral", complex_json(r.integral)},
              {"psi", to_json(r.psi)},
              {"kuranishi", to_json(r.kuranishi)}};
}

json to_json(const FormalSolveReport& r) {
  json psi = json::array(), kur = json::array(), ints = json::array();
  for (const auto& f : r.psi) psi.push_back(to_json(f));
  for (const auto& f : r.kuranishi) kur.push_back(to_json(f));
  for (const auto& x : r.integral) ints.push_back(gaussian_json(x));
  return json{{"backend", "jet"},
              {"exact_zero", r.exact_zero},
              {"integral_pi2_per_order", ints},
              {"psi_per_order", psi},
              {"kuranishi_per_order", kur}};
}

json to_json(const RigidityCertificate& c) {
  return json{{"im_residual", c.im_residual}, {"integral", complex_json(c.integral)}, {"epsilon", c.epsilon},
              {"p1_ratio", c.p1_ratio},       {"pairing", complex_json(c.pairing)},   {"not_flat", c.not_flat}};
}

json to_json(const IntegralIdentity& id) {
  json out{{"residual", id.residual}, {"exact_zero", id.exact_zero}};
  if (!id.lhs.empty()) {
    json l = json::array(), r = json::array();
    for (const auto& x : id.lhs) l.push_back(gaussian_json(x));
    for (const auto& x : id.rhs) r.push_back(gaussian_json(x));
    out["lhs_pi2_per_order"] = l;
    out["rhs_pi2_per_order"] = r;
  } else {
    out["lhs"] = complex_json(id.lhs_grid);
    out["rhs"] = complex_json(id.rhs_grid);
  }
  return out;
}

namespace {

template <class F, class Fn>
void for_each_field(const DeformedStructure<F>& d, Fn fn) {
  fn("h_tilde", d.h_tilde);
  fn("A11", d.A11);
  fn("A1bar_up", d.A1bar_up);
  fn("omega0", d.omega0);
  fn("omega1", d.omega1);
  fn("omega1bar", d.omega1bar);
  fn("R", d.R);
  fn("Q11", d.Q11);
  fn("Q1_up1bar", d.Q1_up1bar);
  fn("O", d.O);
}

}  // namespace

json to_json(const DeformedStructure<JetSeries>& d) {
  json fields = json::object();
  for_each_field(d, [&](const char* name, const JetSeries& f) {
    json per = json::array();
    for (const auto& c : f.coefficients()) per.push_back(to_json(to_harmonic(c)));
    fields[name] = per;
  });
  return json{{"backend", "jet"},
              {"order", d.phi.order()},
              {"fields", fields},
              {"integral_identity", to_json(integral_identity(d))}};
}

json to_json(const DeformedStructure<GridFn>& d, int truncation) {
  json fields = json::object();
  for_each_field(d, [&](const char* name, const GridFn& f) {
    fields[name] = json{{"max_abs", f.max_abs()},
                        {"integral", complex_json(integrate(f))},
                        {"projection", to_json(grid_project(f, truncation))}};
  });
  const GridSpec& s = d.phi.grid().spec();
  return json{{"backend", "grid"},
              {"grid", {{"n_eta", s.n_eta}, {"n_xi", s.n_xi}, {"exactness_degree", s.exactness_degree()}}},
              {"fields", fields},
              {"integral_identity", to_json(integral_identity(d))}};
}

void write_json(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace crs
