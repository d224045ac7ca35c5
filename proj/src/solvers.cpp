#include "crs/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace crs {

std::string to_string(Backend b) { return b == Backend::Jet ? "jet" : "grid"; }

Backend parse_backend(const std::string& name) {
  if (name == "jet") return Backend::Jet;
  if (name == "grid") return Backend::Grid;
  throw std::invalid_argument("unknown backend: " + name);
}

void SolveConfig::validate() const {
  if (truncation < 6) throw std::invalid_argument("SolveConfig: truncation must be >= 6");
  if (!(tol > 0)) throw std::invalid_argument("SolveConfig: tolerance must be positive");
  if (max_iter < 1) throw std::invalid_argument("SolveConfig: max_iter must be >= 1");
  if (jet_order < 2) throw std::invalid_argument("SolveConfig: jet order must be >= 2");
  if (divergence_window < 1) throw std::invalid_argument("SolveConfig: divergence window must be >= 1");
  if (!(scale_cap > 0 && scale_cap < 1)) throw std::invalid_argument("SolveConfig: scale cap must lie in (0, 1)");
  if (grid && grid->exactness_degree() < truncation)
    throw std::invalid_argument("SolveConfig: grid exactness degree below truncation");
}

GridSpec SolveConfig::grid_spec() const { return grid ? *grid : grid_for_degree(3 * truncation); }

namespace {

void require_d0perp(const NumericField& phi0) {
  if (!membership(SpaceTag::D0perp, phi0, 0.0).member)
    throw std::invalid_argument("phi0 must lie in D0perp (blocks q <= 1 only)");
}

struct Evaluation {
  NumericField obstruction;  // grid projection of O at truncation N
  NumericField residual;     // P_Im of it
  std::complex<double> integral;
};

Evaluation evaluate(const Grid& g, const NumericField& phi, int N) {
  auto d = deform_grid(g, phi);
  Evaluation e;
  e.obstruction = grid_project(d.O, N);
  e.residual = project(SpaceTag::ImDO, e.obstruction);
  e.integral = integrate(d.O);
  return e;
}

NumericField restrict_psi(const NumericField& psi, const SolveConfig& cfg) {
  NumericField out = project(cfg.reality ? SpaceTag::DBEprime : SpaceTag::DBE, psi.truncated(cfg.truncation));
  return NumericField(cfg.truncation) + out;
}

}  // namespace

SolveReport partial_solve(const NumericField& phi0_in, const SolveConfig& cfg, const std::optional<NumericField>& initial) {
  cfg.validate();
  require_d0perp(phi0_in);
  const int N = cfg.truncation;
  if (phi0_in.truncation() > N) {
    for (const auto& [k, v] : phi0_in.coefficients())
      if (k.p + k.q > N) throw std::invalid_argument("phi0 has blocks above the truncation");
  }
  const NumericField phi0 = NumericField(N) + phi0_in.truncated(N);
  SolveReport rep;
  rep.grid = cfg.grid_spec();
  const Grid g(rep.grid);
  const double sup = grid_sample(g, phi0).max_abs();
  if (sup > cfg.scale_cap)
    throw ScaleCapError("phi0 exceeds the scale cap: max |phi0| = " + std::to_string(sup) + " > " +
                        std::to_string(cfg.scale_cap));

  NumericField psi = initial ? restrict_psi(*initial, cfg) : NumericField(N);
  int increases = 0;
  Evaluation ev;
  for (;;) {
    ev = evaluate(g, psi + phi0, N);
    const double res = l2_norm(ev.residual);
    ++rep.iterations;
    if (!rep.residuals.empty()) increases = res > rep.residuals.back() ? increases + 1 : 0;
    rep.residuals.push_back(res);
    if (!std::isfinite(res)) {
      rep.diverged = true;
      break;
    }
    if (res <= cfg.tol) {
      rep.converged = true;
      break;
    }
    if (increases >= cfg.divergence_window) {
      rep.diverged = true;
      break;
    }
    if (rep.iterations >= cfg.max_iter) break;
    psi -= inverse_linearization(ev.residual);
  }
  rep.psi = psi;
  rep.kuranishi = project(SpaceTag::H2O, ev.obstruction);
  rep.integral = ev.integral;
  for (std::size_t k = 1; k < rep.residuals.size(); ++k)
    if (rep.residuals[k - 1] > 1e3 * cfg.tol)
      rep.contraction_ratio = std::max(rep.contraction_ratio, rep.residuals[k] / rep.residuals[k - 1]);
  return rep;
}

FormalSolveReport formal_solve(const HarmonicField& u, int truncation, int order) {
  if (truncation < 6) throw std::invalid_argument("formal_solve: truncation must be >= 6");
  if (order < 2) throw std::invalid_argument("formal_solve: order must be >= 2");
  if (!membership(SpaceTag::D0perp, u).member) throw std::invalid_argument("formal_solve: u must lie in D0perp");
  for (const auto& [k, v] : u.coefficients())
    if (k.p + k.q > truncation) throw std::invalid_argument("formal_solve: u has blocks above the truncation");
  FormalSolveReport rep;
  std::vector<HarmonicField> phi(static_cast<std::size_t>(order) + 1, HarmonicField(truncation));
  phi[1] = HarmonicField(truncation) + u;
  rep.psi.assign(phi.size(), HarmonicField(truncation));
  for (int k = 2; k <= order; ++k) {
    auto d = deform_jet(phi, k);
    HarmonicField r = project(SpaceTag::ImDO, to_harmonic(d.O[k], truncation));
    rep.psi[static_cast<std::size_t>(k)] = inverse_linearization(r) * GaussianRational(-1);
    phi[static_cast<std::size_t>(k)] += rep.psi[static_cast<std::size_t>(k)];
  }
  auto d = deform_jet(phi, order);
  auto ints = integrate(d.O);
  rep.exact_zero = true;
  for (int k = 0; k <= order; ++k) {
    HarmonicField o = to_harmonic(d.O[k], truncation);
    if (!project(SpaceTag::ImDO, o).is_zero()) rep.exact_zero = false;
    rep.kuranishi.push_back(project(SpaceTag::H2O, o));
    rep.integral.push_back(ints[static_cast<std::size_t>(k)]);
  }
  return rep;
}

SolveReport kuranishi(const NumericField& phi0, const SolveConfig& cfg) {
  SolveReport rep = partial_solve(phi0, cfg);
  if (!rep.converged)
    throw SolverDivergence("partial solve did not converge after " + std::to_string(rep.iterations) +
                           " evaluations (last residual " + std::to_string(rep.residuals.back()) + ")");
  return rep;
}

mpq_class rigidity_quadratic_form(const HarmonicField& u, MixedSign sign) {
  if (!membership(SpaceTag::D0perp, u).member) throw std::invalid_argument("rigidity_quadratic_form: u must lie in D0perp");
  mpq_class total = 0;
  for (const auto& [pq, n2] : block_norms2(u)) {
    const auto [p, q] = pq;
    total += dq_block_scalar(p, q, sign) * (p - q + 4) * n2;
  }
  return total;
}

Comparability quadratic_form_constants(int pmax, MixedSign sign) {
  Comparability c;
  bool first = true;
  for (int p = 0; p <= pmax; ++p) {
    for (int q = 0; q <= 1; ++q) {
      const double lam = 1.0 + static_cast<double>(sublaplacian_eigenvalue(p, q));
      const double r = mpq_class(dq_block_scalar(p, q, sign) * (p - q + 4)).get_d() / (lam * lam * lam);
      if (first || r < c.lower) {
        c.lower = r;
        c.lower_p = p;
        c.lower_q = q;
      }
      if (first || r > c.upper) {
        c.upper = r;
        c.upper_p = p;
        c.upper_q = q;
      }
      first = false;
    }
  }
  return c;
}

GaussianRational second_order_obstruction(const HarmonicField& u, const HarmonicField& udd) {
  if (!membership(SpaceTag::D0perp, u).member) throw std::invalid_argument("second_order_obstruction: u must lie in D0perp");
  const int n = std::max(u.truncation(), udd.truncation());
  auto d = deform_jet({HarmonicField(n), u, udd * GaussianRational(mpq_class(1, 2))}, 2);
  return integrate(d.O)[2];
}

RigidityCertificate rigidity_certificate(const NumericField& phi_in, const SolveConfig& cfg) {
  cfg.validate();
  const int N = cfg.truncation;
  const NumericField phi = NumericField(N) + phi_in.truncated(N);
  const NumericField p1 = project(SpaceTag::DBEprime, phi);
  const NumericField p2 = project(SpaceTag::D0perp, phi);
  const double off = l2_norm(phi - p1 - p2);
  if (off > 1e-12 * std::max(1.0, l2_norm(phi)))
    throw std::invalid_argument("rigidity_certificate: phi must lie in DBEprime + D0perp");
  const Grid g(cfg.grid_spec());
  auto d = deform_grid(g, phi);
  RigidityCertificate c;
  const NumericField o = grid_project(d.O, N);
  c.im_residual = l2_norm(project(SpaceTag::ImDO, o));
  c.integral = integrate(d.O);
  c.epsilon = fs_norm(phi, 3);
  c.p1_ratio = c.epsilon > 0 ? fs_norm(p1, 3) / c.epsilon : 0;
  const NumericField remainder = o - do_apply(phi);
  c.pairing = inner_product(resolvent_sublaplacian(apply_z1(apply_z1(remainder))), p1);
  c.not_flat = c.im_residual > cfg.tol || std::abs(c.integral) > cfg.tol;
  return c;
}

std::vector<ContractionSample> contraction_samples(const NumericField& phi0_in, const SolveConfig& cfg, double radius,
                                                   int count, std::mt19937_64& rng) {
  cfg.validate();
  require_d0perp(phi0_in);
  const int N = cfg.truncation;
  const NumericField phi0 = NumericField(N) + phi0_in.truncated(N);
  const Grid g(cfg.grid_spec());
  auto image_field = [&](double r) {
    NumericField f = to_numeric(random_real_field(rng, N, 8, 4, [](int p, int q) { return std::min(p, q) >= 2; }));
    const double n = l2_norm(f);
    std::uniform_real_distribution<double> scale(0.1, 1.0);
    return n > 0 ? f * std::complex<double>(r * scale(rng) / n, 0) : f;
  };
  auto T = [&](const NumericField& f) { return f - evaluate(g, inverse_linearization(f) + phi0, N).residual; };
  std::vector<ContractionSample> out;
  for (int s = 0; s < count; ++s) {
    NumericField f1 = image_field(radius), f2 = image_field(radius);
    const double den = l2_norm(f1 - f2);
    if (den == 0) continue;
    out.push_back({l2_norm(T(f1) - T(f2)) / den, l2_norm(f1) + l2_norm(f2)});
  }
  return out;
}

}  // namespace crs
