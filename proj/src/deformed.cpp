#include "crs/deformed.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace crs {

void check_levi_form(const GridFn& phi) {
  const auto node = phi.argmax_abs();
  const double m = phi.max_abs();
  if (!(m < 1.0)) {
    std::ostringstream os;
    os << "deformation violates |phi| < 1 at grid node (eta=" << phi.grid().eta(node[0]) << ", xi1=" << phi.grid().xi(node[1])
       << ", xi2=" << phi.grid().xi(node[2]) << "), |phi| = " << m;
    throw LeviFormError(os.str());
  }
}

IntegralIdentity integral_identity(const DeformedStructure<JetSeries>& d) {
  IntegralIdentity out;
  out.lhs = integrate(d.O);
  out.rhs = integrate(d.phibar_0 * d.Q1_up1bar * d.h_inv * GaussianRational::i());
  out.exact_zero = true;
  for (std::size_t k = 0; k < out.lhs.size(); ++k) {
    GaussianRational diff = out.lhs[k] - out.rhs[k];
    if (!diff.is_zero()) out.exact_zero = false;
    out.residual = std::max(out.residual, std::abs(diff.to_complex()) * std::numbers::pi * std::numbers::pi);
  }
  return out;
}

IntegralIdentity integral_identity(const DeformedStructure<GridFn>& d) {
  IntegralIdentity out;
  out.lhs_grid = integrate(d.O);
  out.rhs_grid = integrate(d.phibar_0 * d.Q1_up1bar * d.h_inv * std::complex<double>(0, 1));
  const double scale = std::max(std::abs(out.lhs_grid), std::abs(out.rhs_grid));
  out.residual = scale > 0 ? std::abs(out.lhs_grid - out.rhs_grid) / scale : 0.0;
  out.exact_zero = out.lhs_grid == out.rhs_grid;
  return out;
}

DeformedStructure<JetSeries> deform_jet(const std::vector<HarmonicField>& phi_coeffs, int order) {
  JetSeries phi(order);
  for (std::size_t k = 0; k < phi_coeffs.size(); ++k) {
    if (k == 0) {
      if (!phi_coeffs[0].is_zero()) throw std::invalid_argument("jet backend requires phi to vanish at t = 0");
      continue;
    }
    if (static_cast<int>(k) > order) break;
    phi[static_cast<int>(k)] = from_harmonic(phi_coeffs[k]);
  }
  return deform(phi);
}

DeformedStructure<GridFn> deform_grid(const Grid& grid, const NumericField& phi) {
  GridFn f = grid_sample(grid, phi);
  check_levi_form(f);
  return deform(f);
}

GridFn evaluate_at(const Grid& grid, const JetSeries& u, double t) {
  GridFn out(grid);
  double tk = 1;
  for (int k = 0; k <= u.order(); ++k) {
    if (!u[k].is_zero()) out += grid_evaluate(grid, u[k]) * std::complex<double>(tk);
    tk *= t;
  }
  return out;
}

}  // namespace crs
