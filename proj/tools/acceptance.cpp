#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "suites.hpp"

using namespace crs;

namespace {

// Tolerances and limits, fixed.
constexpr int kSpectraDegree = 10;
constexpr int kKernelDegree = 8;
constexpr int kImageDegree = 10;
constexpr int kBoundsPmax = 200;
constexpr int kBoundsQmax = 400;
constexpr int kIdentityCount = 20;
constexpr int kIdentityDegree = 4;
constexpr int kIdentityOrder = 4;
constexpr double kIdentityGridTol = 1e-9;
constexpr int kEquivalenceCount = 10;
constexpr int kEquivalenceDegree = 4;
constexpr int kEquivalenceOrder = 5;
constexpr double kEquivalenceT = 1e-2;
constexpr double kEquivalenceTol = 1e-8;
constexpr int kSolvePmax = 4;
constexpr int kSolveInits = 3;
constexpr double kSolveTol = 1e-12;
constexpr int kSecondOrderPmax = 6;
constexpr int kSecondOrderSamples = 5;

class Report {
 public:
  explicit Report(std::string path) : path_(std::move(path)) {}

  void line(const std::string& s) {
    std::cout << s << std::endl;
    text_ << s << "\n";
  }

  void criterion(int id, const std::string& name, bool pass, double seconds, double limit, const std::string& detail) {
    const bool in_time = seconds <= limit;
    std::ostringstream s;
    s << (pass && in_time ? "PASS" : "FAIL") << "  " << id << ". " << name << "  " << detail;
    s.precision(1);
    s << std::fixed << "  [" << seconds << " s, limit " << limit << " s]";
    line(s.str());
    if (!(pass && in_time)) ++failed_;
  }

  void info(const std::string& s) { line("INFO  " + s); }

  void write() const {
    if (path_.empty()) return;
    std::ofstream out(path_);
    out << text_.str();
  }

  int failed() const { return failed_; }

 private:
  std::string path_;
  std::ostringstream text_;
  int failed_ = 0;
};

template <class F>
auto timed(double& seconds, F f) {
  const auto t0 = std::chrono::steady_clock::now();
  auto r = f();
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string rows_summary(const suites::SuiteResult& r) {
  std::size_t pass = 0;
  for (const auto& row : r.rows) pass += row.pass ? 1 : 0;
  return std::to_string(pass) + "/" + std::to_string(r.rows.size()) + " rows";
}

void failing_rows(Report& rep, const suites::SuiteResult& r, std::size_t limit = 40) {
  std::size_t shown = 0;
  for (const auto& row : r.rows) {
    if (row.pass) continue;
    if (shown++ == limit) {
      rep.line("        ...");
      break;
    }
    rep.line("        " + r.name + " " + row.label + ": " + row.detail);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria: one PASS/FAIL line per criterion"};
  std::string report_path;
  std::uint64_t seed = 7;
  bool strict = false;
  std::vector<int> only;
  app.add_option("--report", report_path, "Also write the lines to this file");
  app.add_option("--seed", seed, "Seed for the randomized criteria");
  app.add_option("--only", only, "Run only these criteria")->check(CLI::Range(1, 8));
  app.add_flag("--strict", strict, "Exit 1 when any criterion fails");
  CLI11_PARSE(app, argc, argv);

  const std::set<int> run(only.begin(), only.end());
  auto wanted = [&](int id) { return run.empty() || run.count(id) == 1; };
  Report rep(report_path);
  rep.info("seed " + std::to_string(seed));
  double t = 0;

  if (wanted(1)) {
    auto printed = timed(t, [] { return suites::spectra(kSpectraDegree, suites::Table::Printed); });
    rep.criterion(1, "spectral table, p+q <= 10, exact", printed.pass(), t, 120, rows_summary(printed));
    failing_rows(rep, printed);
    auto derived = suites::spectra(kSpectraDegree, suites::Table::Derived);
    rep.info("1. with mixed term +(2/3)(p+1)q(q-p-4) ((p,1) row (1/3)(p+3)(p+4)): " + rows_summary(derived) +
             (derived.pass() ? " pass" : " fail"));
  }

  if (wanted(2)) {
    double t1 = 0, t2 = 0;
    auto k = timed(t1, [] { return suites::kernel(kKernelDegree); });
    auto im = timed(t2, [] { return suites::image(kImageDegree); });
    rep.criterion(2, "kernel and image of DO, exact", k.pass() && im.pass(), t1 + t2, 120,
                  "kernel " + rows_summary(k) + ", image " + rows_summary(im));
    failing_rows(rep, k);
    failing_rows(rep, im);
  }

  if (wanted(3)) {
    auto b = timed(t, [] { return suites::bounds(kBoundsPmax, kBoundsQmax); });
    std::string detail;
    for (const auto& row : b.rows) detail += "\n        " + std::string(row.pass ? "ok  " : "bad ") + row.label + ": " + row.detail;
    rep.criterion(3, "coercivity ratio scans, p <= 200, q <= 400", b.pass(), t, 60, rows_summary(b) + detail);
  }

  if (wanted(4)) {
    auto r = timed(t, [&] {
      return suites::identity(seed, kIdentityCount, kIdentityDegree, kIdentityOrder, kIdentityGridTol);
    });
    std::ostringstream d;
    d << "jet K=4 " << (r.data["jet_exact_zero"].get<bool>() ? "exactly zero" : "NONZERO") << ", grid max relative "
      << r.data["grid_max_relative"].get<double>() << " (tol 1e-9)";
    rep.criterion(4, "integral identity, 20 random deformations", r.pass(), t, 300, d.str());
    failing_rows(rep, r);
  }

  if (wanted(5)) {
    auto r = timed(t, [&] {
      return suites::equivalence(seed, kEquivalenceCount, kEquivalenceDegree, kEquivalenceOrder, kEquivalenceT,
                                 kEquivalenceTol);
    });
    std::ostringstream d;
    d << "max relative " << r.data["max_relative"].get<double>() << " (tol 1e-8, jet order 5 at t = 1e-2)";
    rep.criterion(5, "jet and grid agree, 10 random deformations", r.pass(), t, 300, d.str());
    failing_rows(rep, r);
  }

  if (wanted(6) || wanted(8)) {
    auto r = timed(t, [&] {
      return suites::partial_solvability(seed, kSolvePmax, {1e-2, 5e-3, 2.5e-3}, kSolveInits, kSolveTol);
    });
    if (wanted(6)) {
      rep.criterion(6, "partial solvability, D0perp basis p <= 4", r.solvability.pass(), t, 600,
                    rows_summary(r.solvability));
      failing_rows(rep, r.solvability);
      if (!r.solvability.pass())
        rep.info("6. failing rows are degree-1 phi0: P_Im O vanishes through t^3 there, so psi = O(eps^4) "
                 "and |psi|/eps^2 scales as eps^2 (exact jet: psi_2 = psi_3 = 0, psi_4 != 0)");
    }
    if (wanted(8)) {
      rep.criterion(8, "no obstruction-flat witnesses near the sphere", r.consistency.pass(), t, 600,
                    rows_summary(r.consistency));
      failing_rows(rep, r.consistency);
    }
    const auto& rows = r.solvability.rows;
    if (!rows.empty()) rep.info("6. e.g. " + rows.front().label + ": " + rows.front().detail);
    if (!r.consistency.rows.empty()) rep.info("8. e.g. " + r.consistency.rows.front().label + ": " + r.consistency.rows.front().detail);
  }

  if (wanted(7)) {
    auto printed = timed(t, [&] {
      return suites::second_order(seed, kSecondOrderPmax, kSecondOrderSamples, suites::Table::Printed);
    });
    rep.criterion(7, "second-order coefficient of int O, p <= 6, 5 random udd", printed.pass(), t, 300,
                  rows_summary(printed));
    failing_rows(rep, printed);
    auto derived = suites::second_order(seed, kSecondOrderPmax, kSecondOrderSamples, suites::Table::Derived);
    rep.info("7. against (p+4)^2(p+3) |u_{p,0}|^2 + (1/3)(p+3)^2(p+4) |u_{p,1}|^2: " + rows_summary(derived) +
             (derived.pass() ? " pass" : " fail"));
  }

  rep.line(std::to_string(rep.failed()) + " criteria failed");
  rep.write();
  return strict && rep.failed() > 0 ? 1 : 0;
}
