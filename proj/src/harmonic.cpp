#include "crs/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace crs {

namespace {

struct BasisEntry {
  PolyFn vec;
  mpq_class norm2;
  GaussianRational z1, z1bar, conj;
  bool tables_ready = false;
};

std::recursive_mutex& cache_mutex() {
  static std::recursive_mutex m;
  return m;
}

std::map<BlockKey, BasisEntry>& cache() {
  static std::map<BlockKey, BasisEntry> c;
  return c;
}

PolyFn representative(int p, int q, int m) {
  if (m >= 0) {
    return PolyFn::monomial({static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(p - m), 0, static_cast<std::uint32_t>(q)});
  }
  return PolyFn::monomial({0, static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(-m), static_cast<std::uint32_t>(q + m)});
}

// Projector onto the lambda_target eigenspace within the span of the listed eigenvalues.
PolyFn interpolation_projector(const PolyFn& u, long target, const std::vector<long>& eigenvalues) {
  PolyFn out = u;
  for (long lam : eigenvalues) {
    if (lam == target) continue;
    PolyFn lu = sublaplacian(out);
    out = (lu - out * GaussianRational(lam)) * GaussianRational(mpq_class(1, target - lam));
  }
  return out;
}

// Leading canonical monomial of Y_{p,q,m}; its coefficient in Y is 1.
Exponent leading_exponent(int p, int q, int m) {
  if (m >= 0) return {static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(p - m), 0, static_cast<std::uint32_t>(q)};
  return {0, static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(-m), static_cast<std::uint32_t>(q + m)};
}

BasisEntry& entry(int p, int q, int m) {
  if (!valid_key({p, q, m})) throw std::out_of_range("basis_vector: invalid (p,q,m)");
  std::lock_guard lock(cache_mutex());
  auto& c = cache();
  auto it = c.find({p, q, m});
  if (it != c.end()) return it->second;
  std::vector<long> eig;
  for (int j = 0; j <= std::min(p, q); ++j) eig.push_back(sublaplacian_eigenvalue(p - j, q - j));
  BasisEntry e;
  e.vec = interpolation_projector(representative(p, q, m), sublaplacian_eigenvalue(p, q), eig);
  e.norm2 = inner_product(e.vec, e.vec).re();
  return c.emplace(BlockKey{p, q, m}, std::move(e)).first->second;
}

GaussianRational ratio_against(const PolyFn& image, int p, int q, int m) {
  if (image.is_zero()) return {};
  // The image lies in a one-dimensional weight space; compare leading coefficients.
  return image.coefficient(leading_exponent(p, q, m));
}

BasisEntry& entry_with_tables(int p, int q, int m) {
  std::lock_guard lock(cache_mutex());
  BasisEntry& e = entry(p, q, m);
  if (e.tables_ready) return e;
  e.z1 = p > 0 ? ratio_against(apply_z1(e.vec), p - 1, q + 1, m - 1) : GaussianRational{};
  e.z1bar = q > 0 ? ratio_against(apply_z1bar(e.vec), p + 1, q - 1, m + 1) : GaussianRational{};
  e.conj = ratio_against(e.vec.conj(), q, p, -m);
  e.tables_ready = true;
  return e;
}

int t_weight(std::uint64_t key) {
  auto e = Exponent::unpack(key);
  return static_cast<int>(e.a + e.b) - static_cast<int>(e.c + e.d);
}

template <class F>
F blockwise_scale(const F& f, auto&& factor) {
  F out(f.truncation());
  for (const auto& [k, v] : f.coefficients()) out.set(k, v * factor(k.p, k.q));
  return out;
}

}  // namespace

const PolyFn& basis_vector(int p, int q, int m) { return entry(p, q, m).vec; }

std::vector<PolyFn> harmonic_basis(int p, int q) {
  std::vector<PolyFn> out;
  for (int m = -q; m <= p; ++m) out.push_back(basis_vector(p, q, m));
  return out;
}

const mpq_class& basis_norm2(int p, int q, int m) { return entry(p, q, m).norm2; }
const GaussianRational& z1_ratio(int p, int q, int m) { return entry_with_tables(p, q, m).z1; }
const GaussianRational& z1bar_ratio(int p, int q, int m) { return entry_with_tables(p, q, m).z1bar; }
const GaussianRational& conj_ratio(int p, int q, int m) { return entry_with_tables(p, q, m).conj; }

PolyFn sublaplacian(const PolyFn& u) { return -(apply_z1(apply_z1bar(u)) + apply_z1bar(apply_z1(u))); }

PolyFn project_pq(const PolyFn& u, int p, int q) {
  if (p < 0 || q < 0) return {};
  const int w = p - q;
  PolyAccumulator acc;
  int max_deg = -1;
  for (const auto& [k, c] : u.terms()) {
    if (t_weight(k) != w) continue;
    acc.add(k, c);
    max_deg = std::max(max_deg, static_cast<int>(Exponent::unpack(k).degree()));
  }
  PolyFn cls = acc.finish();
  if (cls.is_zero() || p + q > max_deg) return {};
  std::vector<long> eig;
  for (int qq = std::max(0, -w); 2 * qq + w <= max_deg; ++qq) eig.push_back(sublaplacian_eigenvalue(qq + w, qq));
  return interpolation_projector(cls, sublaplacian_eigenvalue(p, q), eig);
}

HarmonicField to_harmonic(const PolyFn& u, int truncation) {
  HarmonicField out(truncation < 0 ? std::max(0, u.degree()) : truncation);
  // Peel off the highest-degree monomial of each torus-weight class: it is the leading
  // monomial of exactly one basis vector, whose leading coefficient is 1.
  std::map<std::pair<int, int>, PolyFn> classes;
  {
    std::map<std::pair<int, int>, PolyAccumulator> acc;
    for (const auto& [k, c] : u.terms()) {
      auto e = Exponent::unpack(k);
      acc[{e.weight1(), e.weight2()}].add(k, c);
    }
    for (auto& [w, a] : acc) classes.emplace(w, a.finish());
  }
  for (auto& [w, rest] : classes) {
    while (!rest.is_zero()) {
      const auto* top = &rest.terms().front();
      for (const auto& t : rest.terms())
        if (Exponent::unpack(t.first).degree() > Exponent::unpack(top->first).degree()) top = &t;
      auto e = Exponent::unpack(top->first);
      int p = static_cast<int>(e.a + e.b), q = static_cast<int>(e.c + e.d);
      int m = w.first;
      GaussianRational c = top->second;
      if (p + q > out.truncation()) throw std::out_of_range("to_harmonic: degree exceeds truncation");
      out.add({p, q, m}, c);
      rest -= basis_vector(p, q, m) * c;
    }
  }
  return out;
}

PolyFn from_harmonic(const HarmonicField& f) {
  PolyFn out;
  for (const auto& [k, v] : f.coefficients()) out += basis_vector(k.p, k.q, k.m) * v;
  return out;
}

NumericField to_numeric(const HarmonicField& f) {
  NumericField out(f.truncation());
  for (const auto& [k, v] : f.coefficients()) out.set(k, v.to_complex());
  return out;
}

HarmonicField sublaplacian(const HarmonicField& f) {
  return blockwise_scale(f, [](int p, int q) { return GaussianRational(sublaplacian_eigenvalue(p, q)); });
}
NumericField sublaplacian(const NumericField& f) {
  return blockwise_scale(f, [](int p, int q) { return std::complex<double>(static_cast<double>(sublaplacian_eigenvalue(p, q))); });
}
HarmonicField resolvent_sublaplacian(const HarmonicField& f) {
  return blockwise_scale(f, [](int p, int q) { return GaussianRational(mpq_class(1, 1 + sublaplacian_eigenvalue(p, q))); });
}
NumericField resolvent_sublaplacian(const NumericField& f) {
  return blockwise_scale(f, [](int p, int q) { return std::complex<double>(1.0 / static_cast<double>(1 + sublaplacian_eigenvalue(p, q))); });
}

namespace {

template <class F, class Conv>
F shift_blocks(const F& f, int dp, int dq, int dm, Conv&& ratio) {
  F out(f.truncation());
  for (const auto& [k, v] : f.coefficients()) {
    auto r = ratio(k);
    if (detail::scalar_is_zero(r)) continue;
    out.add({k.p + dp, k.q + dq, k.m + dm}, v * r);
  }
  return out;
}

}  // namespace

HarmonicField apply_z1(const HarmonicField& f) {
  return shift_blocks(f, -1, 1, -1, [](const BlockKey& k) { return z1_ratio(k.p, k.q, k.m); });
}
HarmonicField apply_z1bar(const HarmonicField& f) {
  return shift_blocks(f, 1, -1, 1, [](const BlockKey& k) { return z1bar_ratio(k.p, k.q, k.m); });
}
HarmonicField apply_reeb(const HarmonicField& f) {
  return blockwise_scale(f, [](int p, int q) { return GaussianRational(0, p - q); });
}
HarmonicField conj(const HarmonicField& f) {
  HarmonicField out(f.truncation());
  for (const auto& [k, v] : f.coefficients()) out.add({k.q, k.p, -k.m}, v.conj() * conj_ratio(k.p, k.q, k.m));
  return out;
}

NumericField apply_z1(const NumericField& f) {
  return shift_blocks(f, -1, 1, -1, [](const BlockKey& k) { return z1_ratio(k.p, k.q, k.m).to_complex(); });
}
NumericField apply_z1bar(const NumericField& f) {
  return shift_blocks(f, 1, -1, 1, [](const BlockKey& k) { return z1bar_ratio(k.p, k.q, k.m).to_complex(); });
}
NumericField apply_reeb(const NumericField& f) {
  return blockwise_scale(f, [](int p, int q) { return std::complex<double>(0, p - q); });
}
NumericField conj(const NumericField& f) {
  NumericField out(f.truncation());
  for (const auto& [k, v] : f.coefficients()) out.add({k.q, k.p, -k.m}, std::conj(v) * conj_ratio(k.p, k.q, k.m).to_complex());
  return out;
}

std::map<std::pair<int, int>, mpq_class> block_norms2(const HarmonicField& f) {
  std::map<std::pair<int, int>, mpq_class> out;
  for (const auto& [k, v] : f.coefficients()) out[{k.p, k.q}] += v.norm2() * basis_norm2(k.p, k.q, k.m);
  return out;
}

std::map<std::pair<int, int>, double> block_norms2(const NumericField& f) {
  std::map<std::pair<int, int>, double> out;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  for (const auto& [k, v] : f.coefficients()) out[{k.p, k.q}] += std::norm(v) * basis_norm2(k.p, k.q, k.m).get_d() * pi2;
  return out;
}

mpq_class l2_norm2(const HarmonicField& f) {
  mpq_class s = 0;
  for (const auto& [b, n] : block_norms2(f)) s += n;
  return s;
}

GaussianRational inner_product(const HarmonicField& f, const HarmonicField& g) {
  GaussianRational s;
  for (const auto& [k, v] : f.coefficients()) {
    auto it = g.coefficients().find(k);
    if (it == g.coefficients().end()) continue;
    s += v * it->second.conj() * GaussianRational(basis_norm2(k.p, k.q, k.m));
  }
  return s;
}

std::complex<double> inner_product(const NumericField& f, const NumericField& g) {
  std::complex<double> s = 0;
  for (const auto& [k, v] : f.coefficients()) {
    auto it = g.coefficients().find(k);
    if (it == g.coefficients().end()) continue;
    s += v * std::conj(it->second) * basis_norm2(k.p, k.q, k.m).get_d();
  }
  return s * (std::numbers::pi * std::numbers::pi);
}

double fs_norm(const HarmonicField& f, double s) {
  if (s < 0) throw std::invalid_argument("fs_norm: negative order");
  double acc = 0;
  for (const auto& [b, n] : block_norms2(f))
    acc += std::pow(1.0 + static_cast<double>(sublaplacian_eigenvalue(b.first, b.second)), s) * n.get_d();
  return std::sqrt(acc) * std::numbers::pi;
}

double fs_norm(const NumericField& f, double s) {
  if (s < 0) throw std::invalid_argument("fs_norm: negative order");
  double acc = 0;
  for (const auto& [b, n] : block_norms2(f))
    acc += std::pow(1.0 + static_cast<double>(sublaplacian_eigenvalue(b.first, b.second)), s) * n;
  return std::sqrt(acc);
}

double l2_norm(const NumericField& f) { return fs_norm(f, 0.0); }

HarmonicField random_field(std::mt19937_64& rng, int truncation, long den, long range,
                           const std::function<bool(int, int)>& allow) {
  std::uniform_int_distribution<long> d(-range, range);
  HarmonicField out(truncation);
  for (int p = 0; p <= truncation; ++p) {
    for (int q = 0; p + q <= truncation; ++q) {
      if (allow && !allow(p, q)) continue;
      for (int m = -q; m <= p; ++m) {
        const long a = d(rng), b = d(rng);
        out.set({p, q, m}, GaussianRational(mpq_class(a, den), mpq_class(b, den)));
      }
    }
  }
  return out;
}

HarmonicField random_real_field(std::mt19937_64& rng, int truncation, long den, long range,
                                const std::function<bool(int, int)>& allow) {
  HarmonicField f = random_field(rng, truncation, den, range, allow);
  return f + conj(f);
}

}  // namespace crs
