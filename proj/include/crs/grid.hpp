#pragma once

#include <array>
#include <complex>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "crs/harmonic.hpp"
#include "crs/poly_fn.hpp"

namespace crs {

/// Node counts of a Hopf-coordinate grid: Gauss-Legendre in x = cos(2 eta) with n_eta nodes,
/// uniform trapezoid in xi1, xi2 with n_xi nodes each.
struct GridSpec {
  int n_eta = 16;
  int n_xi = 33;

  /// Largest degree D such that functions of degree <= D sample and project without error:
  /// min(2 n_eta - 1, (n_xi - 1) / 2).
  int exactness_degree() const { return std::min(2 * n_eta - 1, (n_xi - 1) / 2); }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Smallest spec whose exactness degree is at least L.
inline GridSpec grid_for_degree(int L) { return {(L + 2) / 2, 2 * L + 1}; }

/// Raised when a degree or truncation exceeds what a grid resolves.
class AliasingError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Quadrature nodes, FFT plans and harmonic transform tables for one GridSpec.
class Grid {
 public:
  struct Impl;

  /// Empty handle; assign a built grid before use.
  Grid() = default;
  /// Tables are built once per spec and shared by all handles with that spec.
  explicit Grid(GridSpec spec);

  bool valid() const { return impl_ != nullptr; }

  const GridSpec& spec() const;
  std::size_t size() const;
  int exactness_degree() const { return spec().exactness_degree(); }
  double eta(int i) const;
  double xi(int j) const;
  const Impl& impl() const;
  friend bool operator==(const Grid& a, const Grid& b) { return a.impl_ == b.impl_; }

 private:
  std::shared_ptr<const Impl> impl_;
};

/// Complex values at the nodes (eta_i, xi1_j, xi2_k) of a Grid, with
/// z = cos(eta) e^{i xi1}, w = sin(eta) e^{i xi2}.
class GridFn {
 public:
  using value_type = std::complex<double>;

  GridFn() = default;
  explicit GridFn(const Grid& g, value_type c = 0.0);

  const Grid& grid() const { return grid_; }
  const std::vector<value_type>& values() const { return v_; }
  std::vector<value_type>& values() { return v_; }
  value_type at(int i, int j, int k) const;

  GridFn& operator+=(const GridFn& o);
  GridFn& operator-=(const GridFn& o);
  GridFn& operator*=(const GridFn& o);
  GridFn& operator*=(value_type s);
  friend GridFn operator+(GridFn a, const GridFn& b) { return a += b; }
  friend GridFn operator-(GridFn a, const GridFn& b) { return a -= b; }
  friend GridFn operator*(GridFn a, const GridFn& b) { return a *= b; }
  friend GridFn operator*(GridFn a, value_type s) { return a *= s; }
  friend GridFn operator*(value_type s, GridFn a) { return a *= s; }
  GridFn operator-() const { return *this * value_type(-1.0); }

  double max_abs() const;
  /// Node (i, j, k) attaining max_abs.
  std::array<int, 3> argmax_abs() const;
  /// True when every value is finite.
  bool finite() const;

 private:
  Grid grid_;
  std::vector<value_type> v_;
};

/// Frame operators act spectrally: analysis onto H_{p,q} with p + q <= exactness degree,
/// exact coefficient maps, synthesis. Content above the exactness degree is dropped.
GridFn apply_z1(const GridFn& f);
GridFn apply_z1bar(const GridFn& f);
GridFn apply_reeb(const GridFn& f);
GridFn conj(const GridFn& f);
/// Pointwise 1/f; throws std::domain_error at a vanishing node.
GridFn reciprocal(const GridFn& f);

/// Evaluates u at the nodes. Throws AliasingError if deg u exceeds the exactness degree.
GridFn grid_sample(const Grid& g, const PolyFn& u);
GridFn grid_sample(const Grid& g, const NumericField& u);
/// Pointwise values of u at the nodes, any degree (no projection is implied).
GridFn grid_evaluate(const Grid& g, const PolyFn& u);

/// int f theta ^ d theta (pi^2 included).
std::complex<double> integrate(const GridFn& f);
/// Quadrature coefficients against the harmonic basis, blocks p + q <= truncation.
/// Throws AliasingError if truncation exceeds the exactness degree.
NumericField grid_project(const GridFn& f, int truncation);

}  // namespace crs
