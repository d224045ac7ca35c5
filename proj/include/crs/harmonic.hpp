#pragma once

#include <compare>
#include <complex>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "crs/gaussian_rational.hpp"
#include "crs/poly_fn.hpp"

namespace crs {

/// Index (p, q, m) of the basis vector of H_{p,q} with torus weight m in [-q, p].
struct BlockKey {
  int p = 0, q = 0, m = 0;
  auto operator<=>(const BlockKey&) const = default;
};

inline bool valid_key(const BlockKey& k) { return k.p >= 0 && k.q >= 0 && k.m >= -k.q && k.m <= k.p; }

/// 2pq + p + q, the eigenvalue of the sublaplacian on H_{p,q}.
inline long sublaplacian_eigenvalue(int p, int q) { return 2L * p * q + p + q; }

namespace detail {
inline bool scalar_is_zero(const GaussianRational& x) { return x.is_zero(); }
inline bool scalar_is_zero(const std::complex<double>& x) { return x == std::complex<double>{}; }
}  // namespace detail

/// Coefficients over the unnormalized basis of H_{p,q}, 0 <= p+q <= truncation.
template <class Scalar>
class BasicHarmonicField {
 public:
  using scalar_type = Scalar;
  using Map = std::map<BlockKey, Scalar>;

  explicit BasicHarmonicField(int truncation = 0) : truncation_(truncation) {
    if (truncation < 0) throw std::invalid_argument("HarmonicField: negative truncation");
  }

  int truncation() const { return truncation_; }
  const Map& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Scalar get(const BlockKey& k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Scalar{} : it->second;
  }
  void set(const BlockKey& k, Scalar v) {
    if (!valid_key(k)) throw std::out_of_range("HarmonicField: invalid (p,q,m)");
    if (k.p + k.q > truncation_) throw std::out_of_range("HarmonicField: block above truncation");
    if (detail::scalar_is_zero(v)) {
      coeffs_.erase(k);
    } else {
      coeffs_[k] = std::move(v);
    }
  }
  void add(const BlockKey& k, const Scalar& v) { set(k, get(k) + v); }

  /// Coefficients of one (p,q) block, keyed by m.
  std::map<int, Scalar> block(int p, int q) const {
    std::map<int, Scalar> out;
    for (auto it = coeffs_.lower_bound({p, q, -q}); it != coeffs_.end() && it->first.p == p && it->first.q == q; ++it)
      out.emplace(it->first.m, it->second);
    return out;
  }
  /// Distinct nonzero (p,q) blocks in ascending order.
  std::vector<std::pair<int, int>> blocks() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [k, v] : coeffs_)
      if (out.empty() || out.back() != std::pair{k.p, k.q}) out.emplace_back(k.p, k.q);
    return out;
  }

  /// Same field re-truncated; blocks above the new truncation are dropped.
  BasicHarmonicField truncated(int n) const {
    BasicHarmonicField out(n);
    for (const auto& [k, v] : coeffs_)
      if (k.p + k.q <= n) out.coeffs_.emplace(k, v);
    return out;
  }

  BasicHarmonicField& operator+=(const BasicHarmonicField& o) {
    truncation_ = std::max(truncation_, o.truncation_);
    for (const auto& [k, v] : o.coeffs_) add(k, v);
    return *this;
  }
  BasicHarmonicField& operator-=(const BasicHarmonicField& o) {
    truncation_ = std::max(truncation_, o.truncation_);
    for (const auto& [k, v] : o.coeffs_) add(k, -v);
    return *this;
  }
  BasicHarmonicField& operator*=(const Scalar& s) {
    if (detail::scalar_is_zero(s)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [k, v] : coeffs_) v = v * s;
    return *this;
  }
  friend BasicHarmonicField operator+(BasicHarmonicField a, const BasicHarmonicField& b) { return a += b; }
  friend BasicHarmonicField operator-(BasicHarmonicField a, const BasicHarmonicField& b) { return a -= b; }
  friend BasicHarmonicField operator*(BasicHarmonicField a, const Scalar& s) { return a *= s; }
  friend BasicHarmonicField operator*(const Scalar& s, BasicHarmonicField a) { return a *= s; }
  friend bool operator==(const BasicHarmonicField& a, const BasicHarmonicField& b) { return a.coeffs_ == b.coeffs_; }

 private:
  int truncation_ = 0;
  Map coeffs_;
};

using HarmonicField = BasicHarmonicField<GaussianRational>;
using NumericField = BasicHarmonicField<std::complex<double>>;

// --- basis and tables -------------------------------------------------------------------

/// Basis vector of H_{p,q} with torus weight m: the H_{p,q}-projection of
/// z^m w^{p-m} wbar^q (m >= 0) or zbar^{-m} w^p wbar^{q+m} (m < 0). Cached, thread safe.
const PolyFn& basis_vector(int p, int q, int m);
std::vector<PolyFn> harmonic_basis(int p, int q);

/// ||Y_{p,q,m}||^2 as a coefficient of pi^2.
const mpq_class& basis_norm2(int p, int q, int m);
/// Z1 Y_{p,q,m} = r Y_{p-1,q+1,m-1} (r = 0 when p = 0).
const GaussianRational& z1_ratio(int p, int q, int m);
/// Z1bar Y_{p,q,m} = r Y_{p+1,q-1,m+1} (r = 0 when q = 0).
const GaussianRational& z1bar_ratio(int p, int q, int m);
/// conj(Y_{p,q,m}) = r Y_{q,p,-m}.
const GaussianRational& conj_ratio(int p, int q, int m);

// --- exact projections ----------------------------------------------------------------

/// -(Z1 Z1bar + Z1bar Z1), which acts on H_{p,q} by 2pq + p + q.
PolyFn sublaplacian(const PolyFn& u);

/// H_{p,q} component of u, via the T-weight split followed by the sublaplacian
/// interpolation projector prod_{other} (L - lambda_o) / (lambda_t - lambda_o).
PolyFn project_pq(const PolyFn& u, int p, int q);

/// Exact decomposition over the cached basis. Truncation defaults to deg(u).
HarmonicField to_harmonic(const PolyFn& u, int truncation = -1);
PolyFn from_harmonic(const HarmonicField& f);

NumericField to_numeric(const HarmonicField& f);

// --- blockwise operators (exact and numeric) ------------------------------------------

HarmonicField sublaplacian(const HarmonicField& f);
NumericField sublaplacian(const NumericField& f);
/// Divides each (p,q) block by 1 + p + q + 2pq.
HarmonicField resolvent_sublaplacian(const HarmonicField& f);
NumericField resolvent_sublaplacian(const NumericField& f);

HarmonicField apply_z1(const HarmonicField& f);
HarmonicField apply_z1bar(const HarmonicField& f);
HarmonicField apply_reeb(const HarmonicField& f);
HarmonicField conj(const HarmonicField& f);
NumericField apply_z1(const NumericField& f);
NumericField apply_z1bar(const NumericField& f);
NumericField apply_reeb(const NumericField& f);
NumericField conj(const NumericField& f);

/// ||f_{p,q}||^2 per block, as coefficients of pi^2.
std::map<std::pair<int, int>, mpq_class> block_norms2(const HarmonicField& f);
std::map<std::pair<int, int>, double> block_norms2(const NumericField& f);

/// Squared L^2 norm as a coefficient of pi^2 (exact).
mpq_class l2_norm2(const HarmonicField& f);
/// <f, g> over the basis, as a coefficient of pi^2.
GaussianRational inner_product(const HarmonicField& f, const HarmonicField& g);
/// <f, g> with the factor pi^2 included.
std::complex<double> inner_product(const NumericField& f, const NumericField& g);

/// (sum (1+p+q+2pq)^s ||u_{p,q}||^2)^{1/2}, pi included.
double fs_norm(const HarmonicField& f, double s);
double fs_norm(const NumericField& f, double s);
double l2_norm(const NumericField& f);

// --- random sampling ------------------------------------------------------------------

/// Field whose coefficients on allowed blocks are drawn uniformly from the lattice
/// {(a + b i) / den : |a|, |b| <= range}. A null filter allows every block.
HarmonicField random_field(std::mt19937_64& rng, int truncation, long den, long range = 4,
                           const std::function<bool(int, int)>& allow = {});

/// f + conj(f) for f from random_field; symmetric filters keep the result inside the filter.
HarmonicField random_real_field(std::mt19937_64& rng, int truncation, long den, long range = 4,
                                const std::function<bool(int, int)>& allow = {});

}  // namespace crs
