#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "crs/deformed.hpp"
#include "crs/solvers.hpp"

namespace crs::suites {

bool SuiteResult::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; });
}

std::string SuiteResult::table(bool all_rows) const {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const auto& r : rows) {
    if (!r.pass) ++failed;
    if (all_rows || !r.pass) out << (r.pass ? "PASS " : "FAIL ") << r.label << "  " << r.detail << "\n";
  }
  out << name << ": " << rows.size() - failed << "/" << rows.size() << " rows pass\n";
  return out.str();
}

json SuiteResult::to_json() const {
  json rs = json::array();
  for (const auto& r : rows) rs.push_back({{"label", r.label}, {"pass", r.pass}, {"detail", r.detail}});
  return json{{"suite", name}, {"pass", pass()}, {"rows", rs}, {"data", data}};
}

Table parse_table(const std::string& name) {
  if (name == "printed") return Table::Printed;
  if (name == "derived") return Table::Derived;
  throw InputError("unknown table: " + name + " (expected printed or derived)");
}

namespace {

MixedSign sign_of(Table t) { return t == Table::Printed ? MixedSign::Minus : MixedSign::Plus; }
std::string table_name(Table t) { return t == Table::Printed ? "printed" : "derived"; }

std::string block_label(int p, int q) { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

HarmonicField basis_field(int p, int q, int m, int truncation) {
  HarmonicField u(truncation);
  u.set({p, q, m}, GaussianRational(1));
  return u;
}

HarmonicField linear_q(const HarmonicField& u, int truncation) {
  return to_harmonic(deform(JetSeries::linear(1, from_harmonic(u))).Q1_up1bar[1], truncation);
}

HarmonicField linear_o(const HarmonicField& u, int truncation) {
  return to_harmonic(deform(JetSeries::linear(1, from_harmonic(u))).O[1], truncation);
}

// Exact lattice field scaled by a dyadic rational to L^2 norm close to 1.
HarmonicField unit_lattice_field(std::mt19937_64& rng, int degree) {
  HarmonicField u;
  do {
    u = random_field(rng, degree, 8, 4);
  } while (u.is_zero());
  const double n = std::sqrt(l2_norm2(u).get_d()) * std::numbers::pi;
  mpq_class s(static_cast<long>(std::floor(1024.0 / n)), 1024);
  s.canonicalize();
  return u * GaussianRational(s);
}

}  // namespace

SuiteResult spectra(int degree, Table table) {
  if (degree < 0) throw InputError("spectra: degree must be nonnegative");
  const MixedSign sign = sign_of(table);
  SuiteResult res{"spectra", {}, {{"degree", degree}, {"table", table_name(table)}}};
  json blocks = json::array();
  for (int n = 0; n <= degree; ++n) {
    for (int p = 0; p <= n; ++p) {
      const int q = n - p;
      if (q >= 2 && q < p + 4) continue;  // no tabulated scalar outside D0perp and DBE
      std::string kind;
      mpq_class expected;
      if (q > p + 4) {
        kind = "P1DQ";
        expected = p1dq_eigenvalue(p, q, sign);
      } else if (q == p + 4) {
        kind = "P1DQ critical";
        expected = p1dq_eigenvalue(p, q, sign);
      } else {
        kind = "DQ";
        expected = dq_block_scalar(p, q, sign);
      }
      bool ok = true;
      std::string observed;
      for (int m = -q; m <= p; ++m) {
        const HarmonicField u = basis_field(p, q, m, degree);
        if (q > p + 4) {
          const HarmonicField got = project(SpaceTag::DBE, linear_q(u, degree));
          if (observed.empty()) observed = got.get({p, q, m}).to_string();
          ok = ok && got == u * GaussianRational(expected);
        } else if (q == p + 4) {
          const HarmonicField v = project(SpaceTag::DBEprime, u);
          if (v.is_zero()) continue;
          const HarmonicField got = project(SpaceTag::DBE, linear_q(v, degree));
          if (observed.empty()) observed = (got.get({p, q, m}) / v.get({p, q, m})).to_string();
          ok = ok && got == v * GaussianRational(expected);
        } else {
          const HarmonicField got = linear_q(u, degree);
          if (observed.empty()) observed = got.get({p, q, m}).to_string();
          ok = ok && got == u * GaussianRational(expected);
        }
      }
      const std::string exp_s = expected.get_str();
      res.rows.push_back({block_label(p, q) + " " + kind, ok, "expected " + exp_s + " observed " + observed});
      blocks.push_back({{"p", p}, {"q", q}, {"kind", kind}, {"expected", exp_s}, {"observed", observed}, {"pass", ok}});
    }
  }
  res.data["blocks"] = blocks;
  return res;
}

SuiteResult bounds(int pmax, int qmax) {
  if (pmax < 0 || qmax < 4) throw InputError("bounds: need pmax >= 0 and qmax >= 4");
  SuiteResult res{"bounds", {}, {{"pmax", pmax}, {"qmax", qmax}}};
  auto scan_json = [](const RatioScan& s) {
    return json{{"count", s.count},
                {"min", s.min.get_str()},
                {"min_value", s.min.get_d()},
                {"argmin", {s.min_p, s.min_q}},
                {"max", s.max.get_str()},
                {"max_value", s.max.get_d()},
                {"argmax", {s.max_p, s.max_q}},
                {"violations", s.violations.size()}};
  };
  auto describe = [](const RatioScan& s) {
    return "min " + fmt(s.min.get_d()) + " at " + block_label(s.min_p, s.min_q) + ", max " + fmt(s.max.get_d()) +
           " at " + block_label(s.max_p, s.max_q) + ", " + std::to_string(s.count) + " blocks";
  };
  for (Table t : {Table::Derived, Table::Printed}) {
    const RatioScan s = scan_p1dq_ratio(pmax, qmax, sign_of(t));
    res.rows.push_back({"P1DQ / (1+lambda)^2 >= 1/48 (" + table_name(t) + " table)", s.ok(), describe(s)});
    res.data["p1dq_" + table_name(t)] = scan_json(s);
  }
  const RatioScan c = scan_critical_ratio(pmax, qmax);
  res.rows.push_back({"(p+1)(p+2)(q-1)q / (1+lambda)^2 > 0", c.ok() && sgn(c.min) > 0, describe(c)});
  res.data["critical"] = scan_json(c);
  return res;
}

SuiteResult kernel(int degree) {
  if (degree < 0) throw InputError("kernel: degree must be nonnegative");
  SuiteResult res{"kernel", {}, {{"degree", degree}}};
  for (int p = 0; p <= degree; ++p) {
    for (int q = 0; q <= 1 && p + q <= degree; ++q) {
      bool ok = true;
      for (int m = -q; m <= p; ++m) {
        const HarmonicField u = basis_field(p, q, m, degree);
        ok = ok && linear_o(u, degree).is_zero() && do_apply(u).is_zero();
      }
      res.rows.push_back({block_label(p, q) + " D0perp", ok, ok ? "DO = 0" : "DO nonzero"});
    }
  }
  for (int n = 0; n <= degree; ++n) {
    for (int p = 0; p <= n; ++p) {
      const int q = n - p;
      bool ok = true;
      for (int m = -q; m <= p; ++m) {
        const HarmonicField y = basis_field(p, q, m, degree);
        for (const HarmonicField& f : {y + conj(y), (y - conj(y)) * GaussianRational(0, 1)}) {
          const HarmonicField phi = trivial_direction(f);
          ok = ok && linear_o(phi, degree).is_zero() && do_apply(phi).is_zero();
        }
      }
      res.rows.push_back({block_label(p, q) + " i Z1^2 f", ok, ok ? "DO = 0" : "DO nonzero"});
    }
  }
  return res;
}

SuiteResult image(int degree) {
  if (degree < 0) throw InputError("image: degree must be nonnegative");
  SuiteResult res{"image", {}, {{"degree", degree}}};
  std::set<std::pair<int, int>> hit;
  for (int p = 0; p <= degree; ++p) {
    for (int q = p + 4; p + q <= degree; ++q) {
      bool ok = true;
      for (int m = -q; m <= p; ++m) {
        const HarmonicField u = project(SpaceTag::DBEprime, basis_field(p, q, m, degree));
        if (u.is_zero()) continue;
        const HarmonicField v = linear_o(u, degree);
        ok = ok && membership(SpaceTag::ImDO, v).member && v == do_apply(u);
        for (auto b : v.blocks()) hit.insert(b);
      }
      res.rows.push_back({block_label(p, q) + " source", ok, ok ? "real, blocks p,q >= 2" : "outside ImDO"});
    }
  }
  for (int a = 2; a <= degree; ++a) {
    for (int b = 2; a + b <= degree; ++b) {
      const bool ok = hit.count({a, b}) == 1;
      res.rows.push_back({block_label(a, b) + " target", ok, ok ? "hit" : "not hit"});
    }
  }
  return res;
}

SuiteResult identity(std::uint64_t seed, int count, int degree, int order, double grid_tol) {
  if (count < 1 || degree < 1 || order < 2) throw InputError("identity: need count >= 1, degree >= 1, order >= 2");
  SuiteResult res{"identity", {}, {{"seed", seed}, {"count", count}, {"degree", degree}, {"order", order}}};
  std::mt19937_64 rng(seed);
  const Grid g(grid_for_degree(6 * degree));
  double worst_grid = 0;
  bool all_exact = true;
  for (int i = 0; i < count; ++i) {
    const HarmonicField u = unit_lattice_field(rng, degree);
    const auto dj = deform_jet({HarmonicField(degree), u}, order);
    const IntegralIdentity jet = integral_identity(dj);
    const auto dg = deform_grid(g, to_numeric(u) * std::complex<double>(0.05, 0));
    const IntegralIdentity grid = integral_identity(dg);
    all_exact = all_exact && jet.exact_zero;
    worst_grid = std::max(worst_grid, grid.residual);
    res.rows.push_back({"sample " + std::to_string(i), jet.exact_zero && grid.residual <= grid_tol,
                        std::string("jet ") + (jet.exact_zero ? "exact zero" : "nonzero") + ", grid relative " +
                            fmt(grid.residual)});
  }
  res.data["jet_exact_zero"] = all_exact;
  res.data["grid_max_relative"] = worst_grid;
  res.data["grid_tol"] = grid_tol;
  return res;
}

SuiteResult equivalence(std::uint64_t seed, int count, int degree, int order, double t, double tol) {
  if (count < 1 || degree < 1 || order < 2) throw InputError("equivalence: need count >= 1, degree >= 1, order >= 2");
  SuiteResult res{"equivalence", {}, {{"seed", seed}, {"count", count}, {"degree", degree}, {"order", order}, {"t", t}}};
  std::mt19937_64 rng(seed);
  const Grid g(grid_for_degree(6 * degree));
  double worst = 0;
  for (int i = 0; i < count; ++i) {
    const HarmonicField u = unit_lattice_field(rng, degree);
    const auto dj = deform_jet({HarmonicField(degree), u}, order);
    const GridFn oj = evaluate_at(g, dj.O, t);
    const auto dg = deform_grid(g, to_numeric(u) * std::complex<double>(t, 0));
    const double rel = (oj - dg.O).max_abs() / dg.O.max_abs();
    worst = std::max(worst, rel);
    res.rows.push_back({"sample " + std::to_string(i), rel <= tol, "relative " + fmt(rel)});
  }
  res.data["max_relative"] = worst;
  res.data["tol"] = tol;
  return res;
}

SolveSuites partial_solvability(std::uint64_t seed, int pmax, const std::vector<double>& eps, int inits, double tol) {
  if (pmax < 0 || eps.empty() || inits < 1) throw InputError("partial solvability: need pmax >= 0, eps, inits >= 1");
  SolveSuites out{{"partial_solvability", {}, {{"seed", seed}, {"pmax", pmax}, {"eps", eps}, {"inits", inits}}},
                  {"rigidity_consistency", {}, {{"seed", seed}, {"pmax", pmax}}}};
  std::mt19937_64 rng(seed);
  SolveConfig cfg;
  cfg.tol = tol;
  const int N = cfg.truncation;
  for (int p = 0; p <= pmax; ++p) {
    for (int q = 0; q <= 1; ++q) {
      for (int m = -q; m <= p; ++m) {
        const double scale = 1.0 / (std::sqrt(basis_norm2(p, q, m).get_d()) * std::numbers::pi);
        std::vector<double> ratios;
        double worst_res = 0, worst_unique = 0, min_kur = INFINITY, min_int = INFINITY;
        bool converged = true, consistent = true;
        for (double e : eps) {
          NumericField phi0(N);
          phi0.set({p, q, m}, e * scale);
          NumericField first;
          for (int k = 0; k < inits; ++k) {
            std::optional<NumericField> init;
            if (k > 0) {
              NumericField f = to_numeric(project(SpaceTag::DBEprime, random_field(rng, N, 8, 4, [](int a, int b) { return b >= a + 4; })));
              const double n = l2_norm(f);
              if (n > 0) f *= std::complex<double>(e * e / n, 0);
              init = f;
            }
            const SolveReport r = partial_solve(phi0, cfg, init);
            const double res_last = r.residuals.empty() ? INFINITY : r.residuals.back();
            worst_res = std::max(worst_res, res_last);
            if (!r.converged || !(res_last <= tol)) {
              converged = false;
              continue;
            }
            if (k == 0) {
              first = r.psi;
              ratios.push_back(l2_norm(r.psi) / (e * e));
            } else {
              worst_unique = std::max(worst_unique, l2_norm(r.psi - first));
            }
            const double kur = l2_norm(r.kuranishi);
            min_kur = std::min(min_kur, kur);
            min_int = std::min(min_int, r.integral.real());
            consistent = consistent && kur >= 10 * tol && r.integral.real() > 0;
          }
        }
        bool stable = ratios.size() == eps.size();
        if (stable) {
          const double hi = *std::max_element(ratios.begin(), ratios.end());
          const double lo = *std::min_element(ratios.begin(), ratios.end());
          stable = hi - lo <= 0.05 * hi;
        }
        // leading t-order of psi from the exact order-by-order solve, for low degree where it fits in N
        std::string leading;
        if (p + q <= 2) {
          const FormalSolveReport formal = formal_solve(basis_field(p, q, m, N), N, 4);
          leading = ", jet psi leading none through t^4";
          for (std::size_t k = 0; k < formal.psi.size(); ++k) {
            if (!formal.psi[k].is_zero()) {
              leading = ", jet psi leading t^" + std::to_string(k);
              break;
            }
          }
        }
        const bool unique = worst_unique <= 1e-10;
        std::string ratio_s;
        for (double r : ratios) ratio_s += (ratio_s.empty() ? "" : ",") + fmt(r);
        const std::string label = "Y" + block_label(p, q) + " m=" + std::to_string(m);
        out.solvability.rows.push_back({label, converged && stable && unique,
                                        "residual " + fmt(worst_res) + ", |psi|/eps^2 " + ratio_s + ", init spread " +
                                            fmt(worst_unique) + leading});
        out.consistency.rows.push_back({label, converged && consistent,
                                        "min |Psi| " + fmt(min_kur) + ", min int O " + fmt(min_int)});
      }
    }
  }
  return out;
}

SuiteResult second_order(std::uint64_t seed, int pmax, int samples, Table table) {
  if (pmax < 0 || samples < 1) throw InputError("second order: need pmax >= 0 and samples >= 1");
  const MixedSign sign = sign_of(table);
  SuiteResult res{"second_order", {}, {{"seed", seed}, {"pmax", pmax}, {"samples", samples}, {"table", table_name(table)}}};
  std::mt19937_64 rng(seed);
  for (int p = 0; p <= pmax; ++p) {
    for (int q = 0; q <= 1; ++q) {
      const mpq_class expected = dq_block_scalar(p, q, sign) * (p - q + 4);
      bool ok = sgn(expected) > 0;
      std::string observed;
      for (int m = -q; m <= p; ++m) {
        const int n = std::max(p + q, 4);
        const HarmonicField u = basis_field(p, q, m, n);
        const mpq_class norm2 = l2_norm2(u);
        for (int s = 0; s < samples; ++s) {
          const GaussianRational got = second_order_obstruction(u, random_field(rng, n, 5, 4));
          const bool real = got.is_real();
          const mpq_class ratio = got.re() / norm2;
          if (observed.empty() || (ok && !(real && ratio == expected))) observed = (got / GaussianRational(norm2)).to_string();
          ok = ok && real && ratio == expected;
        }
      }
      res.rows.push_back({block_label(p, q), ok, "expected " + expected.get_str() + " observed " + observed});
    }
  }
  // positivity on random combinations
  bool positive = true;
  for (int s = 0; s < samples; ++s) {
    const HarmonicField u = random_field(rng, pmax + 1, 6, 3, [](int, int q) { return q <= 1; });
    if (u.is_zero()) continue;
    const GaussianRational got = second_order_obstruction(u, random_field(rng, pmax + 1, 5, 4));
    positive = positive && got.is_real() && sgn(got.re()) > 0;
  }
  res.rows.push_back({"random u in D0perp", positive, positive ? "strictly positive" : "not positive"});
  return res;
}

}  // namespace crs::suites
