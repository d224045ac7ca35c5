#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crs/io.hpp"
#include "crs/linear_theory.hpp"

namespace crs::suites {

/// One line of a pass/fail table.
struct Row {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<Row> rows;
  json data = json::object();
  bool pass() const;
  /// Rows that failed, or every row when all_rows is set.
  std::string table(bool all_rows) const;
  json to_json() const;
};

/// Which scalar table the spectra suite compares against.
enum class Table {
  Printed,  // mixed term -(2/3)(p+1)q(q-p-4): (p,1) row (1/3)(p+3)(5p+8)
  Derived,  // mixed term +(2/3)(p+1)q(q-p-4), as produced by the nonlinear pipeline
};
Table parse_table(const std::string& name);

/// t-linear jet coefficient of Q_1^{1bar} for every basis vector with p+q <= degree in D0perp
/// (q <= 1, DQ = mu(p,q)) and DBE (q >= p+4, P1DQ; the critical diagonal through DBEprime).
SuiteResult spectra(int degree, Table table);

/// Ratio scans over 0 <= p <= pmax, p+4 <= q <= qmax for both tables and the critical ratio.
SuiteResult bounds(int pmax, int qmax);

/// Linear jet coefficient of O vanishes on D0perp basis vectors and on trivial directions
/// i Z1^2 f, f real, up to the given degree.
SuiteResult kernel(int degree);

/// Image of the linear jet coefficient of O over DBEprime basis vectors with p+q <= degree.
SuiteResult image(int degree);

/// Integral identity on random degree-<= `degree` deformations: exact in the jet backend at
/// order K, relative residual <= grid_tol in the grid backend.
SuiteResult identity(std::uint64_t seed, int count, int degree, int order, double grid_tol);

/// Jet (order K, evaluated at t) against grid for random unit-L^2 deformations of degree <= `degree`.
SuiteResult equivalence(std::uint64_t seed, int count, int degree, int order, double t, double tol);

/// Partial solve on eps * unit D0perp basis vectors (p <= pmax) over an eps sweep and several
/// initializations, with the Kuranishi and integral checks on every converged output.
struct SolveSuites {
  SuiteResult solvability;
  SuiteResult consistency;
};
SolveSuites partial_solvability(std::uint64_t seed, int pmax, const std::vector<double>& eps, int inits, double tol);

/// Second-order coefficient of int O for t u + (t^2/2) udd on basis u (q <= 1, p <= pmax) against
/// the chosen table, for `samples` random udd per u.
SuiteResult second_order(std::uint64_t seed, int pmax, int samples, Table table);

}  // namespace crs::suites
