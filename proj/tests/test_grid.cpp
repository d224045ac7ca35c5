#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "crs/grid.hpp"
#include "crs/harmonic.hpp"
#include "crs/jet.hpp"

using namespace crs;

namespace {

PolyFn random_poly(std::mt19937_64& rng, int deg, int terms) {
  std::uniform_int_distribution<int> c(-4, 4);
  RawTerms raw;
  for (int t = 0; t < terms; ++t) {
    std::uint32_t x[4];
    int budget = deg;
    for (auto& v : x) {
      std::uniform_int_distribution<int> d(0, budget);
      v = static_cast<std::uint32_t>(d(rng));
      budget -= static_cast<int>(v);
    }
    raw.push_back({{x[0], x[1], x[2], x[3]}, GaussianRational(mpq_class(c(rng), 4), mpq_class(c(rng), 3))});
  }
  return reduce_to_canonical(raw);
}

double max_diff(const GridFn& a, const GridFn& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("grid sampling agrees with pointwise evaluation") {
  Grid g({8, 17});
  std::mt19937_64 rng(5);
  auto u = random_poly(rng, 5, 6);
  auto f = grid_sample(g, u);
  for (int i : {0, 3, 7})
    for (int j : {0, 5})
      for (int k : {1, 16}) {
        std::complex<double> z = std::polar(std::cos(g.eta(i)), g.xi(j)), w = std::polar(std::sin(g.eta(i)), g.xi(k));
        CHECK(std::abs(f.at(i, j, k) - u.evaluate(z, w)) < 1e-12);
      }
}

TEST_CASE("default grid resolves degree 16") {
  GridSpec spec;
  CHECK(spec.exactness_degree() == 16);
  CHECK(GridSpec{6, 25}.exactness_degree() == 11);
}

TEST_CASE("grid projection of simple functions") {
  Grid g(GridSpec{});
  auto pz = grid_project(grid_sample(g, PolyFn::z()), 4);
  CHECK(std::abs(pz.get({1, 0, 1}) - 1.0) < 1e-12);
  pz.set({1, 0, 1}, 0.0);
  CHECK(l2_norm(pz) < 1e-12);
  auto one = grid_project(grid_sample(g, PolyFn(1)), 4);
  CHECK(std::abs(one.get({0, 0, 0}) - 1.0) < 1e-12);
  one.set({0, 0, 0}, 0.0);
  CHECK(l2_norm(one) < 1e-12);
}

TEST_CASE("random degree-6 functions round trip through an exactness-12 grid") {
  Grid g({7, 25});
  REQUIRE(g.exactness_degree() == 12);
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 4; ++rep) {
    auto u = random_poly(rng, 6, 10);
    auto h = to_numeric(to_harmonic(u, 6));
    auto back = grid_project(grid_sample(g, u), 6);
    CHECK(l2_norm(back - h) <= 1e-10 * l2_norm(h));
  }
}

TEST_CASE("aliasing is reported") {
  Grid g({4, 9});
  CHECK(g.exactness_degree() == 4);
  auto u = PolyFn::z() * PolyFn::z() * PolyFn::z() * PolyFn::w() * PolyFn::w();
  CHECK_THROWS_AS(grid_sample(g, u), AliasingError);
  CHECK_THROWS_AS(grid_project(GridFn(g, 1.0), 5), AliasingError);
}

TEST_CASE("grid frame operators and integration match the exact algebra") {
  Grid g({12, 41});
  std::mt19937_64 rng(9);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  for (int rep = 0; rep < 3; ++rep) {
    auto u = random_poly(rng, 8, 10);
    auto f = grid_sample(g, u);
    CHECK(max_diff(apply_z1(f), grid_sample(g, apply_z1(u))) < 1e-11);
    CHECK(max_diff(apply_z1bar(f), grid_sample(g, apply_z1bar(u))) < 1e-11);
    CHECK(max_diff(apply_reeb(f), grid_sample(g, apply_reeb(u))) < 1e-11);
    auto exact = integrate(u * u.conj()).to_complex() * pi2;
    CHECK(std::abs(integrate(f * conj(f)) - exact) < 1e-12 * std::abs(exact));
    // Six derivatives stay accurate: no coordinate singularity is involved.
    GridFn d6 = f;
    PolyFn e6 = u;
    for (int k = 0; k < 6; ++k) {
      d6 = k % 2 ? apply_z1(d6) : apply_z1bar(d6);
      e6 = k % 2 ? apply_z1(e6) : apply_z1bar(e6);
    }
    auto ref = grid_sample(g, e6);
    CHECK(max_diff(d6, ref) < 1e-11 * std::max(1.0, ref.max_abs()));
  }
  CHECK(std::abs(integrate(GridFn(g, 1.0)) - 4 * pi2) < 1e-12);
  CHECK(std::abs(integrate(grid_sample(g, PolyFn::z() * PolyFn::zbar())) - 2 * pi2) < 1e-12);
}

TEST_CASE("reciprocal of a smooth positive function") {
  Grid g({16, 49});
  auto phi = grid_sample(g, PolyFn::z() * PolyFn::wbar() * GaussianRational(mpq_class(1, 5)));
  auto h = GridFn(g, 1.0) - phi * conj(phi);
  auto r = reciprocal(h);
  CHECK(max_diff(r * h, GridFn(g, 1.0)) < 1e-14);
  auto lhs = apply_z1(r);
  auto rhs = -(apply_z1(h) * r * r);
  CHECK(max_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("jet series reciprocal") {
  auto u = PolyFn::z() * PolyFn::wbar();
  auto phi = JetSeries::linear(4, u);
  auto h = JetSeries(4, PolyFn(1)) - phi * conj(phi);
  auto r = h.reciprocal();
  CHECK(r * h == JetSeries(4, PolyFn(1)));
  CHECK(r[1].is_zero());
  CHECK(r[2] == u * u.conj());
}
