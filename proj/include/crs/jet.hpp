#pragma once

#include <vector>

#include "crs/poly_fn.hpp"

namespace crs {

/// Truncated power series sum_{k<=K} c_k t^k with PolyFn coefficients.
class JetSeries {
 public:
  explicit JetSeries(int order = 0);
  JetSeries(int order, PolyFn constant);
  /// t * u, the usual first-order deformation.
  static JetSeries linear(int order, const PolyFn& u);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const PolyFn& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  PolyFn& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }
  const std::vector<PolyFn>& coefficients() const { return coeffs_; }
  bool is_zero() const;

  JetSeries& operator+=(const JetSeries& o);
  JetSeries& operator-=(const JetSeries& o);
  JetSeries& operator*=(const GaussianRational& s);
  friend JetSeries operator+(JetSeries a, const JetSeries& b) { return a += b; }
  friend JetSeries operator-(JetSeries a, const JetSeries& b) { return a -= b; }
  friend JetSeries operator*(JetSeries a, const GaussianRational& s) { return a *= s; }
  friend JetSeries operator*(const GaussianRational& s, JetSeries a) { return a *= s; }
  friend JetSeries operator*(const JetSeries& a, const JetSeries& b);
  JetSeries operator-() const;
  friend bool operator==(const JetSeries&, const JetSeries&) = default;

  /// Inverse of a series whose constant term is a nonzero constant function.
  JetSeries reciprocal() const;
  /// Evaluates sum c_k t^k at a point of the sphere.
  std::complex<double> evaluate(double t, std::complex<double> z, std::complex<double> w) const;

 private:
  std::vector<PolyFn> coeffs_;
};

JetSeries apply_z1(const JetSeries& u);
JetSeries apply_z1bar(const JetSeries& u);
JetSeries apply_reeb(const JetSeries& u);
JetSeries conj(const JetSeries& u);
/// Coefficientwise integral, each entry a coefficient of pi^2.
std::vector<GaussianRational> integrate(const JetSeries& u);

}  // namespace crs
