#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "crs/solvers.hpp"

using namespace crs;

namespace {

// eps times the L^2-unit multiple of Y_{p,q,m}.
NumericField scaled_unit(int p, int q, int m, double eps, int N) {
  NumericField u(N);
  u.set({p, q, m}, eps / (std::sqrt(basis_norm2(p, q, m).get_d()) * std::numbers::pi));
  return u;
}

HarmonicField basis_field(int p, int q, int m, int N) {
  HarmonicField u(N);
  u.set({p, q, m}, GaussianRational(1));
  return u;
}

}  // namespace

TEST_CASE("partial solve at the sphere") {
  SolveConfig cfg;
  auto r = partial_solve(NumericField(8), cfg);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK(r.psi.is_zero());
}

TEST_CASE("partial solve on a (2,0) deformation") {
  SolveConfig cfg;
  std::vector<double> ratios;
  NumericField first;
  for (double eps : {1e-2, 5e-3}) {
    auto r = partial_solve(scaled_unit(2, 0, 1, eps, 8), cfg);
    REQUIRE(r.converged);
    CHECK(r.residuals.back() <= 1e-12);
    CHECK(membership(SpaceTag::DBEprime, r.psi, 1e-14).member);
    CHECK(r.integral.real() / (eps * eps) == doctest::Approx(180).epsilon(1e-4));
    CHECK(l2_norm(r.kuranishi) > 0);
    ratios.push_back(l2_norm(r.psi) / (eps * eps));
    if (first.is_zero()) first = r.psi;
  }
  CHECK(ratios[0] == doctest::Approx(ratios[1]).epsilon(0.05));
  std::mt19937_64 rng(4);
  NumericField init = to_numeric(random_field(rng, 8, 8, 4, [](int p, int q) { return q >= p + 4; })) *
                      std::complex<double>(1e-4, 0);
  auto again = partial_solve(scaled_unit(2, 0, 1, 1e-2, 8), cfg, init);
  REQUIRE(again.converged);
  CHECK(l2_norm(again.psi - first) < 1e-10);
}

TEST_CASE("solver input validation") {
  SolveConfig cfg;
  NumericField bad(8);
  bad.set({0, 4, 0}, 1e-3);
  CHECK_THROWS_AS(partial_solve(bad, cfg), std::invalid_argument);
  CHECK_THROWS_AS(partial_solve(scaled_unit(1, 0, 0, 2.0, 8), cfg), ScaleCapError);
  SolveConfig small;
  small.truncation = 4;
  CHECK_THROWS_AS(small.validate(), std::invalid_argument);
  CHECK(parse_backend(to_string(Backend::Jet)) == Backend::Jet);
}

TEST_CASE("rigidity quadratic form") {
  HarmonicField c(4);
  c.set({0, 0, 0}, GaussianRational(mpq_class(1, 2)));  // ||1||^2 = 4 pi^2
  CHECK(l2_norm2(c) == 1);
  CHECK(rigidity_quadratic_form(c) == 48);
  for (int p = 0; p <= 6; ++p) {
    for (int q = 0; q <= 1; ++q) {
      HarmonicField u = basis_field(p, q, 0, 8);
      const mpq_class ratio = rigidity_quadratic_form(u) / l2_norm2(u);
      const mpq_class alt = rigidity_quadratic_form(u, MixedSign::Minus) / l2_norm2(u);
      if (q == 0) {
        CHECK(ratio == (p + 4) * (p + 4) * (p + 3));
        CHECK(alt == ratio);
      } else {
        CHECK(ratio * 3 == (p + 3) * (p + 3) * (p + 4));
        CHECK(alt * 3 == (p + 3) * (p + 3) * (5 * p + 8));
      }
    }
  }
  CHECK_THROWS_AS(rigidity_quadratic_form(basis_field(0, 4, 0, 4)), std::invalid_argument);
  auto k = quadratic_form_constants(50);
  CHECK(k.lower > 0);
  CHECK(k.upper == doctest::Approx(48));
}

TEST_CASE("second-order obstruction matches the quadratic form and ignores udd") {
  std::mt19937_64 rng(2);
  for (auto [p, q, m] : {std::array{2, 0, 1}, std::array{0, 1, -1}, std::array{1, 1, 0}}) {
    HarmonicField u = basis_field(p, q, m, 4);
    const GaussianRational expect(rigidity_quadratic_form(u));
    CHECK(second_order_obstruction(u, HarmonicField(4)) == expect);
    CHECK(second_order_obstruction(u, random_field(rng, 3, 5)) == expect);
  }
}

TEST_CASE("formal solve is exact through its order") {
  auto r = formal_solve(basis_field(2, 0, 1, 6), 6, 3);
  CHECK(r.exact_zero);
  CHECK(r.integral[2] == GaussianRational(rigidity_quadratic_form(basis_field(2, 0, 1, 6))));
  CHECK(r.psi[1].is_zero());
  for (const auto& psi : r.psi) CHECK(membership(SpaceTag::DBEprime, psi).member);
}

TEST_CASE("rigidity certificate") {
  SolveConfig cfg;
  auto zero = rigidity_certificate(NumericField(8), cfg);
  CHECK(zero.im_residual < 1e-12);
  CHECK(std::abs(zero.integral) < 1e-12);
  CHECK_FALSE(zero.not_flat);
  const double eps = 1e-3;
  auto c = rigidity_certificate(scaled_unit(3, 0, 2, eps, 8), cfg);
  CHECK(c.not_flat);
  CHECK(c.integral.real() / (eps * eps) == doctest::Approx(7 * 7 * 6).epsilon(1e-3));
  CHECK(c.epsilon > 0);
  CHECK(c.p1_ratio == doctest::Approx(0));
}

TEST_CASE("fixed-point map is a contraction near the sphere") {
  SolveConfig cfg;
  std::mt19937_64 rng(8);
  auto samples = contraction_samples(scaled_unit(2, 0, 0, 1e-2, 8), cfg, 1e-3, 3, rng);
  REQUIRE(samples.size() == 3);
  for (const auto& s : samples) CHECK(s.ratio < 0.1);
}
