#include "crs/linear_theory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crs {

namespace {

template <class Field>
typename Field::scalar_type lift(const GaussianRational& c) {
  if constexpr (std::is_same_v<typename Field::scalar_type, GaussianRational>) {
    return c;
  } else {
    return c.to_complex();
  }
}

template <class Field>
Field real_part(const Field& u) {
  return (u + conj(u)) * lift<Field>(GaussianRational(mpq_class(1, 2)));
}

template <class Field>
Field keep_blocks(SpaceTag s, const Field& u) {
  Field out(u.truncation());
  for (const auto& [k, v] : u.coefficients())
    if (block_allowed(s, k.p, k.q)) out.set(k, v);
  return out;
}

template <class Field>
Field only_block(const Field& u, int p, int q) {
  Field out(u.truncation());
  for (const auto& [m, v] : u.block(p, q)) out.set({p, q, m}, v);
  return out;
}

// Z1bar^2 Z1^2 on H_{a,b}.
mpq_class z1bar2_z12(int a, int b) { return mpq_class(a) * (a - 1) * (b + 1) * (b + 2); }

template <class Field>
Field project_impl(SpaceTag s, const Field& u) {
  Field out = keep_blocks(s, requires_real(s) ? real_part(u) : u);
  if (s != SpaceTag::DBEprime) return out;
  // Critical diagonal: replace v = Z1bar^2 u by Re v and invert Z1bar^2 on H_{p+2,p+2}.
  for (int p = 0; p + (p + 4) <= u.truncation(); ++p) {
    const int q = p + 4;
    Field b = only_block(out, p, q);
    if (b.is_zero()) continue;
    Field v = real_part(apply_z1bar(apply_z1bar(b)));
    Field fixed = apply_z1(apply_z1(v)) * lift<Field>(GaussianRational(1 / z1bar2_z12(p + 2, p + 2)));
    out -= b;
    out += fixed.truncated(out.truncation());
  }
  return out;
}

template <class Field>
Field nabla0(const Field& u) {
  return apply_reeb(u) + u * lift<Field>(GaussianRational(0, 4));
}

template <class Field>
Field dq_impl(const Field& u) {
  auto c = [](long re_n, long re_d, long im_n, long im_d) {
    return lift<Field>(GaussianRational(mpq_class(re_n, re_d), mpq_class(im_n, im_d)));
  };
  const Field u0 = nabla0(u);
  const Field ub = conj(u);
  Field out = apply_z1(apply_z1(apply_z1bar(apply_z1bar(u)))) * c(1, 6, 0, 1);
  out += apply_z1(apply_z1(apply_z1(apply_z1(ub)))) * c(1, 6, 0, 1);
  out -= nabla0(u0);
  out += apply_z1(apply_z1bar(u0)) * c(0, 1, -2, 3);
  out += u0 * c(0, 1, 1, 1);  // (i/2) R u_0 with R = 2
  return out.truncated(u.truncation());
}

template <class Field>
Field inverse_impl(const Field& f) {
  Field psi(f.truncation());
  for (auto [a, b] : f.blocks()) {
    if (a < 2 || b < 2 || a > b) continue;
    // DO(psi) = mu (v + conj v) with v = Z1bar^2 psi; on the diagonal v is real.
    const mpq_class mu = p1dq_eigenvalue(a - 2, b + 2);
    const mpq_class scale = 1 / (mu * z1bar2_z12(a, b));
    psi += apply_z1(apply_z1(only_block(f, a, b))) * lift<Field>(GaussianRational(scale));
  }
  return psi.truncated(f.truncation());
}

template <class Field>
double l2(const Field& u) {
  if constexpr (std::is_same_v<typename Field::scalar_type, GaussianRational>) {
    return std::sqrt(l2_norm2(u).get_d()) * std::numbers::pi;
  } else {
    return l2_norm(u);
  }
}

}  // namespace

std::string to_string(SpaceTag s) {
  switch (s) {
    case SpaceTag::D0: return "D0";
    case SpaceTag::D0perp: return "D0perp";
    case SpaceTag::DBE: return "DBE";
    case SpaceTag::DBEprime: return "DBEprime";
    case SpaceTag::H1O: return "H1O";
    case SpaceTag::H2O: return "H2O";
    case SpaceTag::ImDO: return "ImDO";
  }
  return "?";
}

SpaceTag parse_space(const std::string& name) {
  for (SpaceTag s : {SpaceTag::D0, SpaceTag::D0perp, SpaceTag::DBE, SpaceTag::DBEprime, SpaceTag::H1O, SpaceTag::H2O,
                     SpaceTag::ImDO})
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown space: " + name);
}

bool block_allowed(SpaceTag s, int p, int q) {
  switch (s) {
    case SpaceTag::D0: return q >= 2;
    case SpaceTag::D0perp:
    case SpaceTag::H1O: return q <= 1;
    case SpaceTag::DBE:
    case SpaceTag::DBEprime: return q >= p + 4;
    case SpaceTag::H2O: return std::min(p, q) <= 1;
    case SpaceTag::ImDO: return std::min(p, q) >= 2;
  }
  return false;
}

bool requires_real(SpaceTag s) { return s == SpaceTag::H2O || s == SpaceTag::ImDO; }

HarmonicField project(SpaceTag s, const HarmonicField& u) { return project_impl(s, u); }
NumericField project(SpaceTag s, const NumericField& u) { return project_impl(s, u); }

Membership membership(SpaceTag s, const HarmonicField& u) {
  HarmonicField r = u - project(s, u);
  return {r.is_zero(), l2(r)};
}

Membership membership(SpaceTag s, const NumericField& u, double tol) {
  const double res = l2(u - project(s, u));
  return {res <= tol, res};
}

mpq_class dq_block_scalar(int p, int q, MixedSign sign) {
  if (p < 0 || q < 0) throw std::invalid_argument("dq_block_scalar: negative degree");
  const mpq_class d = q - p - 4;
  const mpq_class mixed = mpq_class(2, 3) * (p + 1) * q * d;
  mpq_class mu = mpq_class(1, 6) * (p + 1) * (p + 2) * (q - 1) * q + d * d + d;
  mu += sign == MixedSign::Plus ? mixed : mpq_class(-mixed);
  return mu;
}

mpq_class p1dq_eigenvalue(int p, int q, MixedSign sign) {
  if (p < 0 || q < p + 4) throw std::invalid_argument("p1dq_eigenvalue: requires q >= p + 4");
  if (q == p + 4) return mpq_class(1, 3) * (p + 1) * (p + 2) * (q - 1) * q;
  return dq_block_scalar(p, q, sign);
}

HarmonicField dq_apply(const HarmonicField& u) { return dq_impl(u); }
NumericField dq_apply(const NumericField& u) { return dq_impl(u); }

HarmonicField do_apply(const HarmonicField& u) {
  HarmonicField v = apply_z1bar(apply_z1bar(dq_apply(u)));
  return v.truncated(u.truncation());
}
NumericField do_apply(const NumericField& u) {
  NumericField v = apply_z1bar(apply_z1bar(dq_apply(u)));
  return v.truncated(u.truncation());
}

HarmonicField trivial_direction(const HarmonicField& f) {
  return apply_z1(apply_z1(f)) * GaussianRational(0, 1);
}

HarmonicField inverse_linearization(const HarmonicField& f) { return inverse_impl(f); }
NumericField inverse_linearization(const NumericField& f) { return inverse_impl(f); }

namespace {

template <class Ratio>
RatioScan scan(int pmax, int qmax, Ratio ratio, std::optional<mpq_class> bound) {
  RatioScan r;
  r.bound = bound;
  bool first = true;
  for (int p = 0; p <= pmax; ++p) {
    for (int q = p + 4; q <= qmax; ++q) {
      const mpq_class x = ratio(p, q);
      ++r.count;
      if (first || x < r.min) {
        r.min = x;
        r.min_p = p;
        r.min_q = q;
      }
      if (first || x > r.max) {
        r.max = x;
        r.max_p = p;
        r.max_q = q;
      }
      first = false;
      const bool bad = bound ? x < *bound : sgn(x) <= 0;
      if (bad) r.violations.emplace_back(p, q);
    }
  }
  return r;
}

mpq_class sublaplacian_plus_one_sq(int p, int q) {
  const mpq_class e = 1 + sublaplacian_eigenvalue(p, q);
  return e * e;
}

}  // namespace

RatioScan scan_p1dq_ratio(int pmax, int qmax, MixedSign sign) {
  return scan(
      pmax, qmax, [sign](int p, int q) { return mpq_class(p1dq_eigenvalue(p, q, sign) / sublaplacian_plus_one_sq(p, q)); },
      mpq_class(1, 48));
}

RatioScan scan_critical_ratio(int pmax, int qmax) {
  return scan(
      pmax, qmax,
      [](int p, int q) { return mpq_class(mpq_class(p + 1) * (p + 2) * (q - 1) * q / sublaplacian_plus_one_sq(p, q)); },
      std::nullopt);
}

}  // namespace crs
