#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "crs/gaussian_rational.hpp"
#include "crs/jet.hpp"
#include "crs/grid.hpp"

namespace crs {

/// Scalar type and constants for each backend's function type.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<JetSeries> {
  using Scalar = GaussianRational;
  static Scalar make(long re_num, long re_den, long im_num = 0, long im_den = 1) {
    return {mpq_class(re_num, re_den), mpq_class(im_num, im_den)};
  }
  static JetSeries constant(const JetSeries& like, const Scalar& c) { return JetSeries(like.order(), PolyFn(c)); }
  static JetSeries reciprocal(const JetSeries& f) { return f.reciprocal(); }
};

template <>
struct FieldTraits<GridFn> {
  using Scalar = std::complex<double>;
  static Scalar make(long re_num, long re_den, long im_num = 0, long im_den = 1) {
    return {static_cast<double>(re_num) / static_cast<double>(re_den), static_cast<double>(im_num) / static_cast<double>(im_den)};
  }
  static GridFn constant(const GridFn& like, const Scalar& c) { return GridFn(like.grid(), c); }
  static GridFn reciprocal(const GridFn& f) { return crs::reciprocal(f); }
};

/// Raised when the deformed Levi form 1 - |phi|^2 fails to be positive.
class LeviFormError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Direction { Reeb, Holomorphic, Antiholomorphic };

/// Pseudohermitian data of the structure spanned by Z1 + phi Z1bar, contact form fixed.
///
/// Index conventions: A11, Q11 carry two lower 1 indices; A1bar_up is A_{1bar}^1; Q1_up1bar is
/// Q_1^{1bar}; Q_up is Q^{1bar 1bar}. The connection form omega_1^1 has components omega0,
/// omega1, omega1bar along theta, theta~^1, theta~^{1bar}.
template <class F>
struct DeformedStructure {
  F phi, phibar;
  F phi_0, phibar_0;  // undeformed nabla_0 of phi and its conjugate
  F h_tilde, h_inv;
  F A11, A1bar_up, A1bar1bar;
  F omega0, omega1, omega1bar;
  F R;
  F Q11, Q1_up1bar, Q_up;
  F O;

  using Scalar = typename FieldTraits<F>::Scalar;

  /// Z~_1 = Z1 + phi Z1bar.
  F Zt1(const F& f) const { return apply_z1(f) + phi * apply_z1bar(f); }
  /// Z~_{1bar} = Z1bar + phibar Z1.
  F Zt1bar(const F& f) const { return apply_z1bar(f) + phibar * apply_z1(f); }
  /// Z1 recovered from the deformed frame: (Z~_1 - phi Z~_{1bar}) / (1 - |phi|^2).
  F Z1_from_tilde(const F& f) const { return h_inv * (Zt1(f) - phi * Zt1bar(f)); }

  /// Covariant derivative of a component with k net lower 1 indices and l net lower 1bar
  /// indices (upper indices count -1): e(f) - k omega(e) f - l conj(omega)(e) f.
  F covariant(const F& f, int k, int l, Direction dir) const {
    F out = dir == Direction::Reeb ? apply_reeb(f) : dir == Direction::Holomorphic ? Zt1(f) : Zt1bar(f);
    const F& om = dir == Direction::Reeb ? omega0 : dir == Direction::Holomorphic ? omega1 : omega1bar;
    if (k != 0) out -= (om * f) * FieldTraits<F>::make(k, 1);
    if (l != 0) {
      // conj(omega_1^1)(e_a): theta-component conj(omega0), along Z~_1 conj(omega1bar), along Z~_{1bar} conj(omega1).
      const F& cm = dir == Direction::Reeb ? omega0 : dir == Direction::Holomorphic ? omega1bar : omega1;
      out -= (conj(cm) * f) * FieldTraits<F>::make(l, 1);
    }
    return out;
  }
};

template <class F>
DeformedStructure<F> deform(const F& phi) {
  using Tr = FieldTraits<F>;
  auto c = [](long a, long b, long ia = 0, long ib = 1) { return Tr::make(a, b, ia, ib); };
  DeformedStructure<F> d;
  const F one = Tr::constant(phi, c(1, 1));
  d.phi = phi;
  d.phibar = conj(phi);
  const F& P = d.phi;
  const F& Pb = d.phibar;
  const F n2 = P * Pb;
  d.h_tilde = one - n2;
  d.h_inv = Tr::reciprocal(d.h_tilde);
  const F& hinv = d.h_inv;

  // nabla_0 on phi_1^{1bar} is T + 4i and on its conjugate T - 4i.
  d.phi_0 = apply_reeb(P) + P * c(0, 1, 4, 1);
  d.phibar_0 = apply_reeb(Pb) - Pb * c(0, 1, 4, 1);

  d.A11 = -d.phi_0;
  d.A1bar1bar = -d.phibar_0;
  d.A1bar_up = d.A1bar1bar * hinv;

  d.omega0 = Tr::constant(phi, c(0, 1, -2, 1)) - Pb * d.phi_0 * hinv;
  d.omega1 = apply_z1bar(P);
  d.omega1bar = -apply_z1(Pb) - d.Zt1bar(n2) * hinv;

  // R h = d omega(Z~_1, Z~_{1bar}), with [Z~_1, Z~_{1bar}] = -i h T - omega1bar Z~_1 + conj(omega1bar) Z~_{1bar}.
  F curv = d.Zt1(d.omega1bar) - d.Zt1bar(d.omega1);
  curv += d.omega1bar * (d.omega1 - conj(d.omega1bar));
  d.R = hinv * curv + d.omega0 * c(0, 1, 1, 1);

  // Q11 = -1/6 R_{,11} - i/2 R A11 + A11_{,0} + 2i/3 A11_{,}^1_1
  const F R1 = d.covariant(d.R, 0, 0, Direction::Holomorphic);
  const F R11 = d.covariant(R1, 1, 0, Direction::Holomorphic);
  const F A0 = d.covariant(d.A11, 2, 0, Direction::Reeb);
  const F A_up = hinv * d.covariant(d.A11, 2, 0, Direction::Antiholomorphic);
  const F A_up_1 = d.covariant(A_up, 1, 0, Direction::Holomorphic);
  d.Q11 = R11 * c(-1, 6) + d.R * d.A11 * c(0, 1, -1, 2) + A0 + A_up_1 * c(0, 1, 2, 3);
  d.Q1_up1bar = hinv * d.Q11;
  d.Q_up = hinv * d.Q1_up1bar;

  // O = nabla_{1bar} nabla_{1bar} Q^{1bar 1bar} - i A_{1bar 1bar} Q^{1bar 1bar}
  const F inner = d.covariant(d.Q_up, 0, -2, Direction::Antiholomorphic);
  const F outer = d.covariant(inner, 0, -1, Direction::Antiholomorphic);
  d.O = outer + d.A1bar1bar * d.Q_up * c(0, 1, -1, 1);
  return d;
}

/// Grid precondition: max |phi| < 1. Throws LeviFormError naming the offending node.
void check_levi_form(const GridFn& phi);

/// Both sides of  int O = i int phibar_{,0} Q_1^{1bar} / (1 - |phi|^2).
struct IntegralIdentity {
  std::vector<GaussianRational> lhs, rhs;  // jet: per order, coefficients of pi^2
  std::complex<double> lhs_grid = 0, rhs_grid = 0;
  /// Max |lhs - rhs| over orders (jet) or the relative difference (grid).
  double residual = 0;
  bool exact_zero = false;
};

IntegralIdentity integral_identity(const DeformedStructure<JetSeries>& d);
IntegralIdentity integral_identity(const DeformedStructure<GridFn>& d);

/// Jet backend entry: phi(t) = sum_k t^k phi_k with phi_0 = 0.
DeformedStructure<JetSeries> deform_jet(const std::vector<HarmonicField>& phi_coeffs, int order);
/// Grid backend entry: sample phi on the grid and run the pipeline.
DeformedStructure<GridFn> deform_grid(const Grid& grid, const NumericField& phi);

/// Evaluates a jet at numeric t on a torus grid.
GridFn evaluate_at(const Grid& grid, const JetSeries& u, double t);

}  // namespace crs
