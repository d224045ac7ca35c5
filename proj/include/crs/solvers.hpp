#pragma once

#include <complex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "crs/deformed.hpp"
#include "crs/harmonic.hpp"
#include "crs/linear_theory.hpp"

namespace crs {

enum class Backend { Jet, Grid };
std::string to_string(Backend b);
Backend parse_backend(const std::string& name);

/// Raised when a deformation exceeds the configured scale cap.
class ScaleCapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by operations that need a converged fixed point.
class SolverDivergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveConfig {
  int truncation = 8;
  Backend backend = Backend::Grid;
  int jet_order = 4;
  /// Grid used by the grid backend; an empty spec selects grid_for_degree(3 N).
  std::optional<GridSpec> grid;
  double tol = 1e-12;
  int max_iter = 200;
  /// Abort after this many consecutive residual increases.
  int divergence_window = 5;
  /// Upper bound on max |phi0| over the grid nodes.
  double scale_cap = 0.25;
  /// Keep psi in DBEprime (critical-diagonal reality condition) instead of DBE.
  bool reality = true;

  /// Throws std::invalid_argument on N < 6, tol <= 0, max_iter < 1, jet order < 2.
  void validate() const;
  GridSpec grid_spec() const;
};

/// Fixed-point record. The iteration is psi <- psi - L^{-1} P_Im O(psi + phi0), where L is the
/// exact inverse of P_Im DO on DBEprime at the sphere (frozen linearization).
struct SolveReport {
  bool converged = false;
  bool diverged = false;
  int iterations = 0;                  // obstruction evaluations
  std::vector<double> residuals;       // ||P_Im O(psi_k + phi0)||_{L^2} per evaluation
  NumericField psi;                    // in DBE (DBEprime when cfg.reality)
  NumericField kuranishi;              // H2O projection of O(psi + phi0)
  std::complex<double> integral = 0;   // int O(psi + phi0) theta ^ d theta
  double contraction_ratio = 0;        // largest residual ratio above the noise floor
  std::string variant = "frozen";
  GridSpec grid;
};

/// Grid backend. Throws std::invalid_argument if phi0 is not in D0perp, ScaleCapError when
/// max |phi0| exceeds the cap, LeviFormError if |psi + phi0| reaches 1.
SolveReport partial_solve(const NumericField& phi0, const SolveConfig& cfg,
                          const std::optional<NumericField>& initial = std::nullopt);

/// Jet backend: phi(t) = t u + sum_k t^k psi_k solved order by order, exactly.
struct FormalSolveReport {
  std::vector<HarmonicField> psi;        // psi[k], k = 0..K (psi[0] = psi[1] = 0)
  std::vector<HarmonicField> kuranishi;  // H2O projection of the t^k coefficient of O
  std::vector<GaussianRational> integral;  // t^k coefficient of int O, coefficient of pi^2
  bool exact_zero = false;               // P_Im O vanishes through order K at truncation N
};
FormalSolveReport formal_solve(const HarmonicField& u, int truncation, int order);

/// Partial solve followed by the H2O projection; throws SolverDivergence when not converged.
SolveReport kuranishi(const NumericField& phi0, const SolveConfig& cfg);

/// sum_{q in {0,1}} mu(p,q) (p - q + 4) ||u_{p,q}||^2 as a coefficient of pi^2, which is
/// sum (p+4)^2 (p+3) ||u_{p,0}||^2 + (1/3)(p+3)^2 (p+4) ||u_{p,1}||^2 for MixedSign::Plus.
/// Throws std::invalid_argument unless u is in D0perp.
mpq_class rigidity_quadratic_form(const HarmonicField& u, MixedSign sign = MixedSign::Plus);

/// Extremes over blocks q in {0,1}, p <= pmax of the form divided by (1+p+q+2pq)^3.
struct Comparability {
  double lower = 0, upper = 0;
  int lower_p = 0, lower_q = 0, upper_p = 0, upper_q = 0;
};
Comparability quadratic_form_constants(int pmax, MixedSign sign = MixedSign::Plus);

/// t^2 coefficient of int O for phi(t) = t u + (t^2/2) udd, jet backend, coefficient of pi^2.
GaussianRational second_order_obstruction(const HarmonicField& u, const HarmonicField& udd);

struct RigidityCertificate {
  double im_residual = 0;             // ||P_Im O(phi)||
  std::complex<double> integral = 0;  // int O(phi)
  double epsilon = 0;                 // fs_norm(phi, 3)
  double p1_ratio = 0;                // fs_norm(P1 phi, 3) / epsilon, P1 onto DBEprime
  std::complex<double> pairing = 0;   // <(1 + Delta_b)^{-1} Z1^2 (O - DO)(phi), P1 phi>
  bool not_flat = false;              // im_residual or |integral| above tol
};
/// Throws std::invalid_argument unless phi lies in DBEprime + D0perp.
RigidityCertificate rigidity_certificate(const NumericField& phi, const SolveConfig& cfg);

/// Lipschitz sample of the fixed-point map T(f) = f - P_Im O(L^{-1} f + phi0).
struct ContractionSample {
  double ratio = 0;     // ||T f1 - T f2|| / ||f1 - f2||
  double norm_sum = 0;  // ||f1|| + ||f2||
};
std::vector<ContractionSample> contraction_samples(const NumericField& phi0, const SolveConfig& cfg, double radius,
                                                   int count, std::mt19937_64& rng);

}  // namespace crs
