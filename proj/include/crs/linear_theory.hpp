#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crs/harmonic.hpp"

namespace crs {

/// Deformation and obstruction spaces, all defined blockwise in (p, q).
enum class SpaceTag { D0, D0perp, DBE, DBEprime, H1O, H2O, ImDO };

std::string to_string(SpaceTag s);
/// Accepts the names printed by to_string; throws std::invalid_argument otherwise.
SpaceTag parse_space(const std::string& name);

/// Whether block (p, q) may be nonzero in the space (ignores reality conditions).
bool block_allowed(SpaceTag s, int p, int q);
/// Spaces of real functions: H2O and ImDO.
bool requires_real(SpaceTag s);

/// Orthogonal projection: blockwise zeroing, real part for function spaces, and for DBEprime
/// the critical-diagonal reality condition Im(Z1bar^2 u_{p,p+4}) = 0.
HarmonicField project(SpaceTag s, const HarmonicField& u);
NumericField project(SpaceTag s, const NumericField& u);

struct Membership {
  bool member = false;
  double residual = 0;  // L^2 norm of u - project(s, u)
};
/// Exact fields are members only when the residual is exactly zero.
Membership membership(SpaceTag s, const HarmonicField& u);
Membership membership(SpaceTag s, const NumericField& u, double tol);

/// Sign of the mixed term (2/3)(p+1)q(q-p-4) in the block scalar of DQ.
/// Plus is what the nonlinear pipeline produces; Minus reproduces the alternative table whose
/// (p,1) row reads (1/3)(p+3)(5p+8) and whose (0,5) entry is 16/3.
enum class MixedSign { Plus, Minus };

/// mu(p,q) = (1/6)(p+1)(p+2)(q-1)q + d^2 + s (2/3)(p+1)q d + d, d = q - p - 4, s = +-1.
/// DQ(u) = mu(p,q) u + (1/6) Z1^4 conj(u) for u in H_{p,q}.
mpq_class dq_block_scalar(int p, int q, MixedSign sign = MixedSign::Plus);
/// P1 DQ on H_{p,q} restricted to DBEprime; the critical diagonal q = p+4 doubles the
/// (1/6)(p+1)(p+2)(q-1)q term through the reality condition. Throws for q < p+4.
mpq_class p1dq_eigenvalue(int p, int q, MixedSign sign = MixedSign::Plus);

/// DQ(u) = (1/6) u^{11}_{11} + (1/6) conj(u)^{1bar 1bar}_{11} - u_{00} - (2i/3) u_0^1_1 + (i/2) R u_0
/// at the sphere (R = 2), composed from the blockwise frame operators; nabla_0 = T + 4i.
HarmonicField dq_apply(const HarmonicField& u);
NumericField dq_apply(const NumericField& u);
/// DO = Z1bar^2 DQ.
HarmonicField do_apply(const HarmonicField& u);
NumericField do_apply(const NumericField& u);

/// Trivial direction i Z1^2 f for a real f.
HarmonicField trivial_direction(const HarmonicField& f);

/// Exact inverse of P_Im DO restricted to DBEprime: for a real field f with blocks a, b >= 2
/// returns the unique psi in DBEprime with P_Im DO(psi) = f. Uses the Plus scalars.
HarmonicField inverse_linearization(const HarmonicField& f);
NumericField inverse_linearization(const NumericField& f);

/// Result of a ratio scan over 0 <= p <= pmax, p + 4 <= q <= qmax.
struct RatioScan {
  mpq_class min, max;
  int min_p = 0, min_q = 0, max_p = 0, max_q = 0;
  std::optional<mpq_class> bound;  // lower bound checked, if any
  std::vector<std::pair<int, int>> violations;
  long count = 0;
  bool ok() const { return violations.empty(); }
};

/// p1dq_eigenvalue(p,q) / (1+p+q+2pq)^2, checked against the lower bound 1/48.
RatioScan scan_p1dq_ratio(int pmax, int qmax, MixedSign sign = MixedSign::Plus);
/// (p+1)(p+2)(q-1)q / (1+p+q+2pq)^2, checked for strict positivity.
RatioScan scan_critical_ratio(int pmax, int qmax);

}  // namespace crs
