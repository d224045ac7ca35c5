#include <doctest.h>

#include <cmath>
#include <random>

#include "crs/deformed.hpp"
#include "crs/harmonic.hpp"

using namespace crs;

TEST_CASE("standard sphere data at phi = 0") {
  auto d = deform(JetSeries(2));
  CHECK(d.h_tilde == JetSeries(2, PolyFn(1)));
  CHECK(d.A11.is_zero());
  CHECK(d.omega0 == JetSeries(2, PolyFn(GaussianRational(0, -2))));
  CHECK(d.omega1.is_zero());
  CHECK(d.omega1bar.is_zero());
  CHECK(d.R == JetSeries(2, PolyFn(2)));
  CHECK(d.Q11.is_zero());
  CHECK(d.O.is_zero());
}

TEST_CASE("linearized Cartan tensor on the low blocks") {
  for (int p = 0; p <= 3; ++p) {
    for (int q = 0; q <= 1; ++q) {
      const PolyFn& u = basis_vector(p, q, 0 <= p ? 0 : 0);
      auto d = deform(JetSeries::linear(1, u));
      mpq_class expect = q == 0 ? mpq_class((p + 4) * (p + 3)) : mpq_class((p + 3) * (p + 4), 3);
      CHECK(d.Q1_up1bar[1] == u * GaussianRational(expect));
      CHECK(d.O[1].is_zero());
    }
  }
}

TEST_CASE("torsion is -(T + 4i) phi at first order") {
  for (int p = 0; p <= 3; ++p) {
    for (int q = 0; q <= 3; ++q) {
      const PolyFn& u = basis_vector(p, q, 0);
      auto d = deform(JetSeries::linear(1, u));
      CHECK(d.A11[1] == u * GaussianRational(0, -(p - q + 4)));
    }
  }
}

TEST_CASE("deformed frame on coordinates") {
  const GaussianRational eps(mpq_class(1, 3), mpq_class(1, 2));
  const PolyFn phi = PolyFn::z() * PolyFn::wbar() * eps;
  auto d = deform(JetSeries::linear(2, phi));
  const JetSeries wbar(2, PolyFn::wbar()), w(2, PolyFn::w());
  CHECK(d.Zt1(wbar)[1] == PolyFn::z() * PolyFn::z() * PolyFn::wbar() * GaussianRational(-1) * eps);
  CHECK(d.Zt1bar(w)[1] == PolyFn::zbar() * PolyFn::zbar() * PolyFn::w() * GaussianRational(-1) * eps.conj());
  CHECK(d.Zt1(w) == JetSeries(2, PolyFn::zbar() * GaussianRational(-1)));
  for (const JetSeries& f : {w, wbar, JetSeries(2, PolyFn::z() * PolyFn::wbar())})
    CHECK(d.Z1_from_tilde(f) == apply_z1(f));
}

TEST_CASE("structure identities on random jets") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 3; ++trial) {
    const HarmonicField u = random_field(rng, 3, 5, 3);
    auto d = deform_jet({HarmonicField(3), u}, 3);
    // metric compatibility of the connection
    CHECK(d.omega0 + conj(d.omega0) == d.h_inv * apply_reeb(d.h_tilde));
    CHECK(d.omega1 + conj(d.omega1bar) == d.h_inv * d.Zt1(d.h_tilde));
    CHECK(d.R == conj(d.R));
    CHECK(d.O == conj(d.O));
    CHECK(d.Q1_up1bar * d.h_tilde == d.Q11);
    auto id = integral_identity(d);
    CHECK(id.exact_zero);
    CHECK(id.residual == 0);
  }
}

TEST_CASE("jet and grid backends agree") {
  std::mt19937_64 rng(5);
  const Grid g(grid_for_degree(24));
  for (int trial = 0; trial < 2; ++trial) {
    const HarmonicField u = random_field(rng, 2, 6, 3);
    const NumericField un = to_numeric(u);
    const double scale = 1.0 / l2_norm(un);
    auto jet = deform_jet({HarmonicField(2), u}, 4);
    for (double t : {2e-2, 1e-2}) {
      auto grid = deform_grid(g, un * std::complex<double>(t * scale, 0));
      const GridFn diff = grid.O - evaluate_at(g, jet.O, t * scale);
      CHECK(diff.max_abs() < 400 * std::pow(t, 5));
      auto id = integral_identity(grid);
      CHECK(id.residual <= 1e-9);
    }
  }
}

TEST_CASE("Levi form check names the node") {
  const Grid g(grid_for_degree(4));
  NumericField big(1);
  big.set({0, 0, 0}, 1.5);
  CHECK_THROWS_WITH_AS(check_levi_form(grid_sample(g, big)), doctest::Contains("node"), LeviFormError);
  CHECK_THROWS_AS(deform_grid(g, big), LeviFormError);
}

TEST_CASE("second-order integral of O for u = zw") {
  const PolyFn& u = basis_vector(2, 0, 1);
  auto d = deform(JetSeries::linear(2, u));
  auto id = integral_identity(d);
  CHECK(id.exact_zero);
  CHECK(id.lhs[2] == GaussianRational(120));
}
