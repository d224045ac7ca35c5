#include <doctest.h>

#include <cmath>
#include <random>

#include "crs/gaussian_rational.hpp"
#include "crs/harmonic.hpp"
#include "crs/poly_fn.hpp"

using namespace crs;

namespace {

PolyFn random_poly(std::mt19937_64& rng, int deg, int terms) {
  std::uniform_int_distribution<int> e(0, deg), c(-5, 5);
  RawTerms raw;
  for (int t = 0; t < terms; ++t) {
    std::uint32_t x[4];
    int budget = deg;
    for (auto& v : x) {
      std::uniform_int_distribution<int> d(0, budget);
      v = static_cast<std::uint32_t>(d(rng));
      budget -= static_cast<int>(v);
    }
    raw.push_back({{x[0], x[1], x[2], x[3]}, GaussianRational(mpq_class(c(rng), 3), mpq_class(c(rng), 2))});
  }
  (void)e;
  return reduce_to_canonical(raw);
}

}  // namespace

TEST_CASE("gaussian rational arithmetic") {
  GaussianRational a(mpq_class(1, 2), mpq_class(3)), b(mpq_class(-2), mpq_class(1, 3));
  auto q = a / b;
  CHECK(q * b == a);
  CHECK((a * a.conj()).is_real());
  CHECK((a * a.conj()).re() == a.norm2());
  GaussianRational acc;
  acc.add_product(a, b);
  CHECK(acc == a * b);
  CHECK_THROWS_AS(a / GaussianRational(), std::domain_error);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == mpq_class(3, 4));
  CHECK(parse_rational("-6/8") == mpq_class(-3, 4));
  CHECK(parse_rational("0.125") == mpq_class(1, 8));
  CHECK(parse_rational("-2.5e-1") == mpq_class(-1, 4));
  CHECK(parse_rational("1e2") == mpq_class(100));
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("canonical form on the sphere") {
  PolyFn r2 = PolyFn::z() * PolyFn::zbar() + PolyFn::w() * PolyFn::wbar();
  CHECK(r2 == PolyFn(1));
  auto zz = PolyFn::z() * PolyFn::zbar();
  CHECK(zz.size() == 2);
}

TEST_CASE("integration against the contact volume") {
  CHECK(integrate(PolyFn(1)) == GaussianRational(4));
  CHECK(integrate(PolyFn::z() * PolyFn::zbar()) == GaussianRational(2));
  // |w|^4 integrates to 4/3 pi^2.
  auto w2 = PolyFn::w() * PolyFn::wbar();
  CHECK(integrate(w2 * w2) == GaussianRational(mpq_class(4, 3)));
  CHECK(integrate(PolyFn::z()).is_zero());
}

TEST_CASE("frame acts with the expected signs") {
  CHECK(apply_z1(PolyFn::z()) == PolyFn::wbar());
  CHECK(apply_z1bar(apply_z1(PolyFn::z())) == -PolyFn::z());
  CHECK(apply_reeb(PolyFn::z()) == GaussianRational::i() * PolyFn::z());
  CHECK(apply_z1(PolyFn::zbar()).is_zero());
  // Z1 kills holomorphic functions only up to the tangency: Z1(|z|^2+|w|^2) = 0.
  CHECK(apply_z1(PolyFn::z() * PolyFn::zbar() + PolyFn::w() * PolyFn::wbar()).is_zero());
}

TEST_CASE("Leibniz rule and conjugation intertwine the frame") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 5; ++k) {
    auto u = random_poly(rng, 4, 5), v = random_poly(rng, 3, 4);
    CHECK(apply_z1(u * v) == apply_z1(u) * v + u * apply_z1(v));
    CHECK(apply_z1bar(u).conj() == apply_z1(u.conj()));
    CHECK(apply_reeb(u * v) == apply_reeb(u) * v + u * apply_reeb(v));
    // Commutator [Z1, Z1bar] = -i T.
    auto lhs = apply_z1(apply_z1bar(u)) - apply_z1bar(apply_z1(u));
    CHECK(lhs == GaussianRational(0, -1) * apply_reeb(u));
    // Divergence-free frame: int Z1(u) = 0.
    CHECK(integrate(apply_z1(u)).is_zero());
  }
}

TEST_CASE("harmonic basis eigenvalues and dimensions") {
  for (int p = 0; p <= 4; ++p) {
    for (int q = 0; q + p <= 5; ++q) {
      auto basis = harmonic_basis(p, q);
      CHECK(basis.size() == static_cast<std::size_t>(p + q + 1));
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& y = basis[i];
        CHECK(sublaplacian(y) == y * GaussianRational(sublaplacian_eigenvalue(p, q)));
        CHECK(apply_reeb(y) == y * GaussianRational(0, p - q));
        CHECK(apply_z1bar(apply_z1(y)) == y * GaussianRational(-p * (q + 1)));
        CHECK(apply_z1(apply_z1bar(y)) == y * GaussianRational(-q * (p + 1)));
        for (std::size_t j = 0; j < i; ++j) CHECK(inner_product(y, basis[j]).is_zero());
        CHECK(basis_norm2(p, q, static_cast<int>(i) - q) > 0);
      }
    }
  }
  CHECK(inner_product(basis_vector(2, 1, 0), basis_vector(1, 0, 0)).is_zero());
}

TEST_CASE("coefficient tables match direct application") {
  for (int p = 0; p <= 3; ++p) {
    for (int q = 0; q <= 3; ++q) {
      for (int m = -q; m <= p; ++m) {
        const auto& y = basis_vector(p, q, m);
        if (p > 0) CHECK(apply_z1(y) == basis_vector(p - 1, q + 1, m - 1) * z1_ratio(p, q, m));
        if (q > 0) CHECK(apply_z1bar(y) == basis_vector(p + 1, q - 1, m + 1) * z1bar_ratio(p, q, m));
        CHECK(y.conj() == basis_vector(q, p, -m) * conj_ratio(p, q, m));
      }
    }
  }
}

TEST_CASE("decomposition round trip") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 6; ++k) {
    auto u = random_poly(rng, 5, 8);
    auto f = to_harmonic(u);
    CHECK(from_harmonic(f) == u);
    for (auto [p, q] : f.blocks()) {
      HarmonicField blk(f.truncation());
      for (auto [m, c] : f.block(p, q)) blk.set({p, q, m}, c);
      CHECK(project_pq(u, p, q) == from_harmonic(blk));
    }
    CHECK(to_harmonic(apply_z1(u), f.truncation()) == apply_z1(f));
    CHECK(to_harmonic(apply_z1bar(u), f.truncation()) == apply_z1bar(f));
    CHECK(to_harmonic(u.conj(), f.truncation()) == conj(f));
    CHECK(l2_norm2(f) == inner_product(u, u).re());
  }
}

TEST_CASE("numeric field mirrors the exact one") {
  std::mt19937_64 rng(3);
  auto u = random_poly(rng, 4, 6);
  auto f = to_harmonic(u);
  auto nf = to_numeric(f);
  auto a = to_numeric(apply_z1(f));
  auto b = apply_z1(nf);
  CHECK(l2_norm(a - b) < 1e-12);
  CHECK(std::abs(l2_norm(nf) - std::sqrt(l2_norm2(f).get_d()) * M_PI) < 1e-12);
  CHECK(std::abs(fs_norm(f, 1.0) - fs_norm(nf, 1.0)) < 1e-12);
}
