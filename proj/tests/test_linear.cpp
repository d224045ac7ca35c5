#include <doctest.h>

#include <random>
#include <set>

#include "crs/deformed.hpp"
#include "crs/harmonic.hpp"
#include "crs/linear_theory.hpp"

using namespace crs;

namespace {

mpq_class frac(long a, long b) {
  mpq_class x(a, b);
  x.canonicalize();
  return x;
}

HarmonicField basis_field(int p, int q, int m, int truncation) {
  HarmonicField u(truncation);
  u.set({p, q, m}, GaussianRational(1));
  return u;
}

}  // namespace

TEST_CASE("block scalars of DQ") {
  for (int p = 0; p <= 30; ++p) {
    CHECK(dq_block_scalar(p, 0) == mpq_class((p + 4) * (p + 3)));
    CHECK(dq_block_scalar(p, 1) == frac((p + 3) * (p + 4), 3));
    CHECK(dq_block_scalar(p, 1, MixedSign::Minus) == frac((p + 3) * (5 * p + 8), 3));
    CHECK(dq_block_scalar(p, 0, MixedSign::Minus) == dq_block_scalar(p, 0));
    for (int q = 0; q <= 40; ++q) {
      // Plus scalar factors as (1/6)(q-2)(q-3)(p+3)(p+4).
      CHECK(dq_block_scalar(p, q) == frac((q - 2) * (q - 3) * (p + 3) * (p + 4), 6));
    }
  }
  CHECK(p1dq_eigenvalue(0, 4) == 8);
  CHECK(p1dq_eigenvalue(1, 5) == 40);
  CHECK(p1dq_eigenvalue(0, 5, MixedSign::Minus) == mpq_class(16, 3));
  CHECK(p1dq_eigenvalue(0, 5) == 12);
  CHECK_THROWS_AS(p1dq_eigenvalue(1, 4), std::invalid_argument);
}

TEST_CASE("DQ acts by its block scalar on D0perp and by P1DQ on DBE") {
  const int N = 10;
  for (int p = 0; p <= N; ++p) {
    for (int q = 0; p + q <= N; ++q) {
      for (int m = -q; m <= p; ++m) {
        HarmonicField u = basis_field(p, q, m, N);
        if (q <= 1) {
          CHECK(dq_apply(u) == u * GaussianRational(dq_block_scalar(p, q)));
        } else if (q > p + 4) {
          HarmonicField d = dq_apply(u);
          CHECK(d.get({p, q, m}) == GaussianRational(p1dq_eigenvalue(p, q)));
          CHECK(d.block(p, q).size() == 1);
        } else if (q == p + 4) {
          HarmonicField v = project(SpaceTag::DBEprime, u);
          HarmonicField d = project(SpaceTag::DBE, dq_apply(v));
          CHECK(d == v * GaussianRational(p1dq_eigenvalue(p, q)));
        }
      }
    }
  }
}

TEST_CASE("linear coefficient of the nonlinear Cartan tensor matches DQ") {
  const int N = 6;
  for (int p = 0; p <= N; ++p) {
    for (int q = 0; p + q <= N; ++q) {
      for (int m = -q; m <= p; ++m) {
        const PolyFn& y = basis_vector(p, q, m);
        auto d = deform(JetSeries::linear(1, y));
        CHECK(to_harmonic(d.Q1_up1bar[1], N) == dq_apply(basis_field(p, q, m, N)));
        CHECK(to_harmonic(d.O[1], N) == do_apply(basis_field(p, q, m, N)));
      }
    }
  }
}

TEST_CASE("kernel of DO") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 3; ++rep) {
    HarmonicField u = random_field(rng, 8, 3, 4, [](int, int q) { return q <= 1; });
    CHECK(do_apply(u).is_zero());
    HarmonicField f = random_real_field(rng, 8, 5);
    CHECK(do_apply(trivial_direction(f)).is_zero());
  }
}

TEST_CASE("image of DO over DBEprime is real and fills the blocks p, q >= 2") {
  const int N = 10;
  std::set<std::pair<int, int>> hit;
  for (int p = 0; p <= N; ++p) {
    for (int q = p + 4; p + q <= N; ++q) {
      for (int m = -q; m <= p; ++m) {
        HarmonicField u = project(SpaceTag::DBEprime, basis_field(p, q, m, N));
        if (u.is_zero()) continue;
        HarmonicField v = do_apply(u);
        CHECK(membership(SpaceTag::ImDO, v).member);
        for (auto b : v.blocks()) hit.insert(b);
      }
    }
  }
  for (int a = 2; a <= N; ++a)
    for (int b = 2; a + b <= N; ++b) CHECK(hit.count({a, b}) == 1);
}

TEST_CASE("inverse linearization") {
  std::mt19937_64 rng(5);
  const int N = 10;
  HarmonicField f = random_real_field(rng, N, 7, 4, [](int p, int q) { return std::min(p, q) >= 2; });
  HarmonicField psi = inverse_linearization(f);
  CHECK(membership(SpaceTag::DBEprime, psi).member);
  CHECK(do_apply(psi) == f);
  NumericField fn = to_numeric(f);
  CHECK(l2_norm(do_apply(inverse_linearization(fn)) - fn) < 1e-12 * l2_norm(fn));
}

TEST_CASE("space projections") {
  std::mt19937_64 rng(3);
  HarmonicField u = random_field(rng, 9, 4);
  CHECK(project(SpaceTag::D0, u) + project(SpaceTag::D0perp, u) == u);
  CHECK(project(SpaceTag::H1O, u) == project(SpaceTag::D0perp, u));
  HarmonicField p0 = project(SpaceTag::D0perp, u);
  for (auto [p, q] : p0.blocks()) CHECK(q <= 1);
  for (SpaceTag s : {SpaceTag::D0, SpaceTag::D0perp, SpaceTag::DBE, SpaceTag::DBEprime, SpaceTag::H2O, SpaceTag::ImDO}) {
    HarmonicField v = project(s, u);
    CHECK(project(s, v) == v);
    CHECK(membership(s, v).member);
    CHECK(parse_space(to_string(s)) == s);
  }
  HarmonicField h2 = project(SpaceTag::H2O, u);
  CHECK(conj(h2) == h2);
  for (auto [p, q] : h2.blocks()) CHECK(std::min(p, q) <= 1);
  CHECK_FALSE(membership(SpaceTag::D0perp, u).member);
  CHECK(membership(SpaceTag::D0perp, u).residual > 0);
  // The reality projection on the critical diagonal is orthogonal for the real inner product.
  HarmonicField c(4);
  for (int m = -4; m <= 0; ++m) c.set({0, 4, m}, GaussianRational(frac(m + 7, 3), frac(2 * m - 1, 5)));
  HarmonicField pc = project(SpaceTag::DBEprime, c);
  CHECK(sgn(inner_product(c - pc, pc).re()) == 0);
  HarmonicField v = apply_z1bar(apply_z1bar(pc));
  CHECK(conj(v) == v);
}

TEST_CASE("ratio scans") {
  auto s = scan_p1dq_ratio(30, 60);
  CHECK(s.ok());
  CHECK(s.min >= mpq_class(1, 48));
  auto c = scan_critical_ratio(30, 60);
  CHECK(c.ok());
  CHECK(sgn(c.min) > 0);
  auto one = scan_p1dq_ratio(0, 4);
  CHECK(one.count == 1);
  CHECK(one.min == mpq_class(8, 25));
  CHECK(scan_critical_ratio(0, 4).min == mpq_class(24, 25));
}

TEST_CASE("numeric DQ mirrors the exact one") {
  std::mt19937_64 rng(9);
  HarmonicField u = random_field(rng, 8, 6);
  NumericField a = to_numeric(dq_apply(u));
  NumericField b = dq_apply(to_numeric(u));
  CHECK(l2_norm(a - b) < 1e-12 * l2_norm(a));
}
