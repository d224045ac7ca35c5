#include "crs/poly_fn.hpp"

#include <algorithm>
#include <stdexcept>

namespace crs {

namespace {

constexpr std::uint64_t kSlot = 0xffff;

inline std::uint32_t slot_a(std::uint64_t k) { return static_cast<std::uint32_t>(k >> 48); }
inline std::uint32_t slot_b(std::uint64_t k) { return static_cast<std::uint32_t>((k >> 32) & kSlot); }
inline std::uint32_t slot_c(std::uint64_t k) { return static_cast<std::uint32_t>((k >> 16) & kSlot); }
inline std::uint32_t slot_d(std::uint64_t k) { return static_cast<std::uint32_t>(k & kSlot); }

inline std::uint64_t pack(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
  return Exponent{a, b, c, d}.pack();
}

// Binomial row of (1 - w wbar)^k with alternating signs, cached.
const std::vector<mpz_class>& binomial_row(std::uint32_t k) {
  thread_local std::vector<std::vector<mpz_class>> rows;
  while (rows.size() <= k) {
    std::size_t n = rows.size();
    std::vector<mpz_class> r(n + 1);
    r[0] = 1;
    for (std::size_t j = 1; j <= n; ++j) r[j] = r[j - 1] * static_cast<unsigned long>(n - j + 1) / static_cast<unsigned long>(j);
    rows.push_back(std::move(r));
  }
  return rows[k];
}

void merge_into(std::vector<PolyFn::Term>& dst, const std::vector<PolyFn::Term>& src, bool subtract) {
  std::vector<PolyFn::Term> out;
  out.reserve(dst.size() + src.size());
  auto i = dst.begin();
  auto j = src.begin();
  while (i != dst.end() || j != src.end()) {
    if (j == src.end() || (i != dst.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == dst.end() || j->first < i->first) {
      out.emplace_back(j->first, subtract ? -j->second : j->second);
      ++j;
    } else {
      GaussianRational c = std::move(i->second);
      if (subtract) c -= j->second; else c += j->second;
      if (!c.is_zero()) out.emplace_back(i->first, std::move(c));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

}  // namespace

void PolyAccumulator::reserve(std::size_t n) { raw_.reserve(n); }

void PolyAccumulator::add(std::uint64_t raw_key, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = raw_.try_emplace(raw_key, c);
  if (!inserted) it->second += c;
}

void PolyAccumulator::add_product(std::uint64_t raw_key, const GaussianRational& a, const GaussianRational& b) {
  auto [it, inserted] = raw_.try_emplace(raw_key);
  it->second.add_product(a, b);
}

PolyFn PolyAccumulator::finish() {
  std::unordered_map<std::uint64_t, GaussianRational> canon;
  canon.reserve(raw_.size());
  for (auto& [key, coeff] : raw_) {
    if (coeff.is_zero()) continue;
    std::uint32_t a = slot_a(key), c = slot_c(key);
    if (a == 0 || c == 0) {
      auto [it, inserted] = canon.try_emplace(key, std::move(coeff));
      if (!inserted) it->second += coeff;
      continue;
    }
    std::uint32_t k = std::min(a, c);
    std::uint32_t b = slot_b(key), d = slot_d(key);
    const auto& row = binomial_row(k);
    for (std::uint32_t j = 0; j <= k; ++j) {
      mpq_class s(row[j]);
      if (j % 2 == 1) s = -s;
      GaussianRational term = coeff * GaussianRational(s);
      std::uint64_t nk = pack(a - k, b + j, c - k, d + j);
      auto [it, inserted] = canon.try_emplace(nk, std::move(term));
      if (!inserted) it->second += term;
    }
  }
  raw_.clear();
  PolyFn out;
  out.terms_.reserve(canon.size());
  for (auto& [key, coeff] : canon) {
    if (!coeff.is_zero()) out.terms_.emplace_back(key, std::move(coeff));
  }
  std::sort(out.terms_.begin(), out.terms_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

PolyFn::PolyFn(const GaussianRational& c) {
  if (!c.is_zero()) terms_.emplace_back(0, c);
}

PolyFn PolyFn::monomial(Exponent e, const GaussianRational& coeff) {
  if (e.a > kSlot || e.b > kSlot || e.c > kSlot || e.d > kSlot) throw std::overflow_error("PolyFn: exponent too large");
  PolyAccumulator acc;
  acc.add(e.pack(), coeff);
  return acc.finish();
}

PolyFn PolyFn::z() { return monomial({1, 0, 0, 0}); }
PolyFn PolyFn::w() { return monomial({0, 1, 0, 0}); }
PolyFn PolyFn::zbar() { return monomial({0, 0, 1, 0}); }
PolyFn PolyFn::wbar() { return monomial({0, 0, 0, 1}); }

GaussianRational PolyFn::coefficient(Exponent e) const {
  auto key = e.pack();
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key, [](const Term& t, std::uint64_t k) { return t.first < k; });
  if (it != terms_.end() && it->first == key) return it->second;
  return {};
}

int PolyFn::degree() const {
  int deg = -1;
  for (const auto& [k, c] : terms_) deg = std::max(deg, static_cast<int>(Exponent::unpack(k).degree()));
  return deg;
}

std::pair<int, int> PolyFn::bidegree_bound() const {
  int hol = 0, anti = 0;
  for (const auto& [k, c] : terms_) {
    hol = std::max(hol, static_cast<int>(slot_a(k) + slot_b(k)));
    anti = std::max(anti, static_cast<int>(slot_c(k) + slot_d(k)));
  }
  return {hol, anti};
}

PolyFn PolyFn::conj() const {
  PolyFn out;
  out.terms_.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.terms_.emplace_back(pack(slot_c(k), slot_d(k), slot_a(k), slot_b(k)), c.conj());
  std::sort(out.terms_.begin(), out.terms_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

PolyFn& PolyFn::operator+=(const PolyFn& o) {
  merge_into(terms_, o.terms_, false);
  return *this;
}

PolyFn& PolyFn::operator-=(const PolyFn& o) {
  merge_into(terms_, o.terms_, true);
  return *this;
}

PolyFn& PolyFn::operator*=(const GaussianRational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= s;
  return *this;
}

PolyFn PolyFn::operator-() const {
  PolyFn out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

PolyFn operator*(const PolyFn& a, const PolyFn& b) {
  if (a.is_zero() || b.is_zero()) return {};
  PolyAccumulator acc;
  acc.reserve(a.size() * 2 + b.size() * 2);
  // Packed keys add slotwise as long as no slot overflows.
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) acc.add_product(ka + kb, ca, cb);
  }
  return acc.finish();
}

std::complex<double> PolyFn::evaluate(std::complex<double> z, std::complex<double> w) const {
  std::complex<double> sum = 0;
  const std::complex<double> zb = std::conj(z), wb = std::conj(w);
  for (const auto& [k, c] : terms_) {
    auto e = Exponent::unpack(k);
    std::complex<double> m = c.to_complex();
    for (std::uint32_t i = 0; i < e.a; ++i) m *= z;
    for (std::uint32_t i = 0; i < e.b; ++i) m *= w;
    for (std::uint32_t i = 0; i < e.c; ++i) m *= zb;
    for (std::uint32_t i = 0; i < e.d; ++i) m *= wb;
    sum += m;
  }
  return sum;
}

PolyFn reduce_to_canonical(const RawTerms& raw) {
  PolyAccumulator acc;
  for (const auto& [e, c] : raw) acc.add(e.pack(), c);
  return acc.finish();
}

PolyFn apply_z1(const PolyFn& u) {
  PolyAccumulator acc;
  for (const auto& [k, c] : u.terms()) {
    auto e = Exponent::unpack(k);
    if (e.a > 0) acc.add(pack(e.a - 1, e.b, e.c, e.d + 1), c * GaussianRational(static_cast<long>(e.a)));
    if (e.b > 0) acc.add(pack(e.a, e.b - 1, e.c + 1, e.d), c * GaussianRational(-static_cast<long>(e.b)));
  }
  return acc.finish();
}

PolyFn apply_z1bar(const PolyFn& u) {
  PolyAccumulator acc;
  for (const auto& [k, c] : u.terms()) {
    auto e = Exponent::unpack(k);
    if (e.c > 0) acc.add(pack(e.a, e.b + 1, e.c - 1, e.d), c * GaussianRational(static_cast<long>(e.c)));
    if (e.d > 0) acc.add(pack(e.a + 1, e.b, e.c, e.d - 1), c * GaussianRational(-static_cast<long>(e.d)));
  }
  return acc.finish();
}

PolyFn apply_reeb(const PolyFn& u) {
  PolyAccumulator acc;
  for (const auto& [k, c] : u.terms()) {
    auto e = Exponent::unpack(k);
    long weight = static_cast<long>(e.a + e.b) - static_cast<long>(e.c + e.d);
    acc.add(k, c * GaussianRational(0, weight));
  }
  return acc.finish();
}

GaussianRational integrate(const PolyFn& u) {
  GaussianRational total;
  for (const auto& [k, c] : u.terms()) {
    auto e = Exponent::unpack(k);
    // Canonical form: only pure powers of w wbar survive, with a = c = 0.
    if (e.a == 0 && e.c == 0 && e.b == e.d) total += c * GaussianRational(mpq_class(4, e.b + 1));
  }
  return total;
}

GaussianRational inner_product(const PolyFn& u, const PolyFn& v) { return integrate(u * v.conj()); }

}  // namespace crs
