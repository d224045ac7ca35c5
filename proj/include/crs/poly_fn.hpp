#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "crs/gaussian_rational.hpp"

namespace crs {

/// Exponent (a,b,c,d) of z^a w^b zbar^c wbar^d, packed 16 bits per slot.
struct Exponent {
  std::uint32_t a = 0, b = 0, c = 0, d = 0;

  std::uint64_t pack() const {
    return (std::uint64_t{a} << 48) | (std::uint64_t{b} << 32) | (std::uint64_t{c} << 16) | d;
  }
  static Exponent unpack(std::uint64_t k) {
    return {static_cast<std::uint32_t>(k >> 48), static_cast<std::uint32_t>((k >> 32) & 0xffff),
            static_cast<std::uint32_t>((k >> 16) & 0xffff), static_cast<std::uint32_t>(k & 0xffff)};
  }
  std::uint32_t degree() const { return a + b + c + d; }
  /// Torus weights: (z, w) -> (e^{i s} z, e^{i t} w) scales the monomial by e^{i(k1 s + k2 t)}.
  int weight1() const { return static_cast<int>(a) - static_cast<int>(c); }
  int weight2() const { return static_cast<int>(b) - static_cast<int>(d); }
  friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// A raw (not yet reduced) monomial sum.
using RawTerms = std::vector<std::pair<Exponent, GaussianRational>>;

/// Exact polynomial function on the unit sphere in C^2.
///
/// Stored in the canonical form of the quotient ring C[z,w,zbar,wbar]/(z zbar + w wbar - 1):
/// no monomial contains both z and zbar, and no zero coefficient is stored. Terms are kept
/// sorted by packed exponent, so equality is structural.
class PolyFn {
 public:
  using Term = std::pair<std::uint64_t, GaussianRational>;

  PolyFn() = default;
  PolyFn(const GaussianRational& c);  // NOLINT(google-explicit-constructor)
  PolyFn(long c) : PolyFn(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)

  static PolyFn z();
  static PolyFn w();
  static PolyFn zbar();
  static PolyFn wbar();
  static PolyFn monomial(Exponent e, const GaussianRational& coeff = 1);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of a canonical monomial (zero if absent or if e is not canonical).
  GaussianRational coefficient(Exponent e) const;

  /// Maximal total degree a+b+c+d over stored terms; -1 for the zero function.
  int degree() const;
  /// Largest holomorphic degree a+b and antiholomorphic degree c+d over all terms.
  std::pair<int, int> bidegree_bound() const;

  PolyFn conj() const;
  bool is_real() const { return *this == conj(); }

  PolyFn& operator+=(const PolyFn& o);
  PolyFn& operator-=(const PolyFn& o);
  PolyFn& operator*=(const GaussianRational& s);
  friend PolyFn operator+(PolyFn a, const PolyFn& b) { return a += b; }
  friend PolyFn operator-(PolyFn a, const PolyFn& b) { return a -= b; }
  friend PolyFn operator*(PolyFn a, const GaussianRational& s) { return a *= s; }
  friend PolyFn operator*(const GaussianRational& s, PolyFn a) { return a *= s; }
  friend PolyFn operator*(const PolyFn& a, const PolyFn& b);
  PolyFn operator-() const;
  friend bool operator==(const PolyFn&, const PolyFn&) = default;

  std::complex<double> evaluate(std::complex<double> z, std::complex<double> w) const;

 private:
  friend class PolyAccumulator;
  std::vector<Term> terms_;
};

/// Collects raw monomials and produces a canonical PolyFn.
class PolyAccumulator {
 public:
  void add(std::uint64_t raw_key, const GaussianRational& c);
  void add_product(std::uint64_t raw_key, const GaussianRational& a, const GaussianRational& b);
  PolyFn finish();
  void reserve(std::size_t n);

 private:
  std::unordered_map<std::uint64_t, GaussianRational> raw_;
};

/// Rewrites z zbar -> 1 - w wbar until no monomial contains both z and zbar.
PolyFn reduce_to_canonical(const RawTerms& raw);

/// Z1 = wbar d/dz - zbar d/dw, the standard (1,0) field tangent to the sphere.
PolyFn apply_z1(const PolyFn& u);
/// Complex conjugate of Z1: w d/dzbar - z d/dwbar.
PolyFn apply_z1bar(const PolyFn& u);
/// Reeb field T = i(z d/dz + w d/dw) - i(zbar d/dzbar + wbar d/dwbar).
PolyFn apply_reeb(const PolyFn& u);

/// Integral against theta ^ d theta, returned as the rational coefficient of pi^2.
/// Uses  int z^a w^b zbar^c wbar^d = 4 pi^2 a! b! / (a+b+1)!  when a=c, b=d, else 0.
GaussianRational integrate(const PolyFn& u);
/// <u, v> = int u conj(v) theta ^ d theta, as a coefficient of pi^2.
GaussianRational inner_product(const PolyFn& u, const PolyFn& v);

}  // namespace crs
