#include "crs/grid.hpp"

#include <fftw3.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace crs {

using cd = std::complex<double>;

namespace {

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cd* p) { return reinterpret_cast<fftw_complex*>(p); }

constexpr mp_bitcnt_t kProfileBits = 256;

}  // namespace

struct Grid::Impl {
  GridSpec spec;
  int L = 0;
  std::vector<double> x, eta, weight, xi;
  fftw_plan fwd2 = nullptr, bwd2 = nullptr;

  // Harmonic transform tables. Blocks are numbered by `slot`; `modes` groups them by torus
  // weight (k1, k2) = (m, p - q - m).
  struct Entry {
    int p, q, m;
    double inv_norm2;  // 1 / (||Y||^2 / pi^2)
    cd z1, z1bar;
  };
  std::vector<Entry> entries;
  std::vector<int> slot_of;       // (p, q, m) -> slot, or -1
  std::vector<double> profile;    // slot * n_eta + i
  struct Mode {
    int k1, k2;
    std::vector<int> slots;
  };
  std::vector<Mode> modes;

  ~Impl() {
    std::lock_guard lock(plan_mutex());
    if (fwd2) fftw_destroy_plan(fwd2);
    if (bwd2) fftw_destroy_plan(bwd2);
  }

  std::size_t index(int i, int j, int k) const {
    const auto n = static_cast<std::size_t>(spec.n_xi);
    return (static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n + static_cast<std::size_t>(k);
  }
  int slot(int p, int q, int m) const {
    if (p < 0 || q < 0 || p + q > L || m < -q || m > p) return -1;
    return slot_of[static_cast<std::size_t>((p * (L + 1) + q) * (2 * L + 1) + (m + L))];
  }
  int wrap(int k) const { return (k % spec.n_xi + spec.n_xi) % spec.n_xi; }

  std::vector<cd> analysis(const GridFn& f) const {
    std::vector<cd> hat = f.values();
    fftw_execute_dft(fwd2, as_fftw(hat.data()), as_fftw(hat.data()));
    const double n2 = static_cast<double>(spec.n_xi) * spec.n_xi;
    std::vector<cd> c(entries.size());
    for (const auto& mode : modes) {
      const int j = wrap(mode.k1), k = wrap(mode.k2);
      for (int s : mode.slots) {
        const double* r = &profile[static_cast<std::size_t>(s) * x.size()];
        cd acc = 0;
        for (std::size_t i = 0; i < x.size(); ++i) acc += weight[i] * r[i] * hat[index(static_cast<int>(i), j, k)];
        // <f, Y> = 2 pi^2 sum_i w_i fhat_i r_i; divide by ||Y||^2.
        c[static_cast<std::size_t>(s)] = acc * (2.0 / n2) * entries[static_cast<std::size_t>(s)].inv_norm2;
      }
    }
    return c;
  }

  GridFn synthesis(const Grid& g, const std::vector<cd>& c) const {
    GridFn out(g);
    auto& buf = out.values();
    for (const auto& mode : modes) {
      const int j = wrap(mode.k1), k = wrap(mode.k2);
      for (int s : mode.slots) {
        const cd cs = c[static_cast<std::size_t>(s)];
        if (cs == cd{}) continue;
        const double* r = &profile[static_cast<std::size_t>(s) * x.size()];
        for (std::size_t i = 0; i < x.size(); ++i) buf[index(static_cast<int>(i), j, k)] += cs * r[i];
      }
    }
    fftw_execute_dft(bwd2, as_fftw(buf.data()), as_fftw(buf.data()));
    return out;
  }
};

namespace {

std::shared_ptr<const Grid::Impl> build_grid(GridSpec spec);

}  // namespace

Grid::Grid(GridSpec spec) {
  if (spec.n_eta < 1 || spec.n_xi < 3) throw std::invalid_argument("Grid: need n_eta >= 1 and n_xi >= 3");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const Impl>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{spec.n_eta, spec.n_xi}];
  if (!slot) slot = build_grid(spec);
  impl_ = slot;
}

const Grid::Impl& Grid::impl() const {
  if (!impl_) throw std::logic_error("Grid: empty handle");
  return *impl_;
}

namespace {

std::shared_ptr<const Grid::Impl> build_grid(GridSpec spec) {
  auto impl = std::make_shared<Grid::Impl>();
  impl->spec = spec;
  impl->L = spec.exactness_degree();
  const int L = impl->L;
  gsl_integration_glfixed_table* tab = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(spec.n_eta));
  for (int i = 0; i < spec.n_eta; ++i) {
    double xi = 0, wi = 0;
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &xi, &wi, tab);
    impl->x.push_back(xi);
    impl->weight.push_back(wi);
    impl->eta.push_back(0.5 * std::acos(xi));
  }
  gsl_integration_glfixed_table_free(tab);
  for (int j = 0; j < spec.n_xi; ++j) impl->xi.push_back(2 * std::numbers::pi * j / spec.n_xi);

  // Powers of cos(eta), sin(eta) at the nodes in extended precision.
  std::vector<std::vector<mpf_class>> cos_pow(impl->x.size()), sin_pow(impl->x.size());
  for (std::size_t i = 0; i < impl->x.size(); ++i) {
    mpf_class x(impl->x[i], kProfileBits);
    mpf_class c = sqrt((1 + x) / 2), s = sqrt((1 - x) / 2);
    cos_pow[i].assign(static_cast<std::size_t>(L) + 1, mpf_class(1, kProfileBits));
    sin_pow[i].assign(static_cast<std::size_t>(L) + 1, mpf_class(1, kProfileBits));
    for (int k = 1; k <= L; ++k) {
      cos_pow[i][static_cast<std::size_t>(k)] = cos_pow[i][static_cast<std::size_t>(k - 1)] * c;
      sin_pow[i][static_cast<std::size_t>(k)] = sin_pow[i][static_cast<std::size_t>(k - 1)] * s;
    }
  }
  impl->slot_of.assign(static_cast<std::size_t>((L + 1) * (L + 1) * (2 * L + 1)), -1);
  std::map<std::pair<int, int>, std::vector<int>> by_mode;
  for (int p = 0; p <= L; ++p) {
    for (int q = 0; p + q <= L; ++q) {
      for (int m = -q; m <= p; ++m) {
        const int s = static_cast<int>(impl->entries.size());
        impl->slot_of[static_cast<std::size_t>((p * (L + 1) + q) * (2 * L + 1) + (m + L))] = s;
        impl->entries.push_back({p, q, m, 1.0 / basis_norm2(p, q, m).get_d(), z1_ratio(p, q, m).to_complex(),
                                 z1bar_ratio(p, q, m).to_complex()});
        by_mode[{m, p - q - m}].push_back(s);
        // Profiles involve cancelling sums of rational multiples; evaluate them in extended precision.
        const PolyFn& y = basis_vector(p, q, m);
        for (std::size_t i = 0; i < impl->x.size(); ++i) {
          mpf_class acc(0, kProfileBits);
          for (const auto& [key, coeff] : y.terms()) {
            auto e = Exponent::unpack(key);
            mpf_class t(coeff.re(), kProfileBits);
            t *= cos_pow[i][e.a + e.c];
            t *= sin_pow[i][e.b + e.d];
            acc += t;
          }
          impl->profile.push_back(acc.get_d());
        }
      }
    }
  }
  for (auto& [w, slots] : by_mode) impl->modes.push_back({w.first, w.second, std::move(slots)});
  {
    std::lock_guard lock(plan_mutex());
    std::vector<cd> buf(static_cast<std::size_t>(spec.n_eta) * static_cast<std::size_t>(spec.n_xi) * static_cast<std::size_t>(spec.n_xi));
    int dims[2] = {spec.n_xi, spec.n_xi};
    const int dist = spec.n_xi * spec.n_xi;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    impl->fwd2 = fftw_plan_many_dft(2, dims, spec.n_eta, as_fftw(buf.data()), nullptr, 1, dist, as_fftw(buf.data()), nullptr, 1,
                                    dist, FFTW_FORWARD, flags);
    impl->bwd2 = fftw_plan_many_dft(2, dims, spec.n_eta, as_fftw(buf.data()), nullptr, 1, dist, as_fftw(buf.data()), nullptr, 1,
                                    dist, FFTW_BACKWARD, flags);
  }
  return impl;
}

}  // namespace

const GridSpec& Grid::spec() const { return impl().spec; }
std::size_t Grid::size() const {
  return static_cast<std::size_t>(impl().spec.n_eta) * static_cast<std::size_t>(impl().spec.n_xi) *
         static_cast<std::size_t>(impl().spec.n_xi);
}
double Grid::eta(int i) const { return impl().eta.at(static_cast<std::size_t>(i)); }
double Grid::xi(int j) const { return impl().xi.at(static_cast<std::size_t>(j)); }

GridFn::GridFn(const Grid& g, value_type c) : grid_(g), v_(g.size(), c) {}

GridFn::value_type GridFn::at(int i, int j, int k) const { return v_.at(grid_.impl().index(i, j, k)); }

namespace {

void check_same(const GridFn& a, const GridFn& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("GridFn: grid mismatch");
}

}  // namespace

GridFn& GridFn::operator+=(const GridFn& o) {
  check_same(*this, o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}
GridFn& GridFn::operator-=(const GridFn& o) {
  check_same(*this, o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}
GridFn& GridFn::operator*=(const GridFn& o) {
  check_same(*this, o);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] *= o.v_[i];
  return *this;
}
GridFn& GridFn::operator*=(value_type s) {
  for (auto& x : v_) x *= s;
  return *this;
}

double GridFn::max_abs() const {
  double m = 0;
  for (const auto& x : v_) m = std::max(m, std::abs(x));
  return m;
}

std::array<int, 3> GridFn::argmax_abs() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v_.size(); ++i)
    if (std::abs(v_[i]) > std::abs(v_[best])) best = i;
  const auto n = static_cast<std::size_t>(grid_.spec().n_xi);
  return {static_cast<int>(best / (n * n)), static_cast<int>((best / n) % n), static_cast<int>(best % n)};
}

bool GridFn::finite() const {
  for (const auto& x : v_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

GridFn apply_z1(const GridFn& f) {
  const auto& im = f.grid().impl();
  auto c = im.analysis(f);
  std::vector<cd> out(c.size());
  for (std::size_t s = 0; s < c.size(); ++s) {
    const auto& e = im.entries[s];
    if (e.p == 0 || c[s] == cd{}) continue;
    out[static_cast<std::size_t>(im.slot(e.p - 1, e.q + 1, e.m - 1))] += c[s] * e.z1;
  }
  return im.synthesis(f.grid(), out);
}

GridFn apply_z1bar(const GridFn& f) {
  const auto& im = f.grid().impl();
  auto c = im.analysis(f);
  std::vector<cd> out(c.size());
  for (std::size_t s = 0; s < c.size(); ++s) {
    const auto& e = im.entries[s];
    if (e.q == 0 || c[s] == cd{}) continue;
    out[static_cast<std::size_t>(im.slot(e.p + 1, e.q - 1, e.m + 1))] += c[s] * e.z1bar;
  }
  return im.synthesis(f.grid(), out);
}

GridFn apply_reeb(const GridFn& f) {
  const auto& im = f.grid().impl();
  auto c = im.analysis(f);
  for (std::size_t s = 0; s < c.size(); ++s) c[s] *= cd(0, im.entries[s].p - im.entries[s].q);
  return im.synthesis(f.grid(), c);
}

GridFn conj(const GridFn& f) {
  GridFn out = f;
  for (auto& x : out.values()) x = std::conj(x);
  return out;
}

GridFn reciprocal(const GridFn& f) {
  GridFn out = f;
  for (auto& x : out.values()) {
    if (x == cd{}) throw std::domain_error("GridFn: reciprocal of a vanishing node");
    x = 1.0 / x;
  }
  return out;
}

GridFn grid_sample(const Grid& g, const PolyFn& u) {
  if (u.degree() > g.exactness_degree())
    throw AliasingError("grid_sample: degree " + std::to_string(u.degree()) + " exceeds grid exactness degree " +
                        std::to_string(g.exactness_degree()));
  return grid_evaluate(g, u);
}

GridFn grid_evaluate(const Grid& g, const PolyFn& u) {
  const auto& im = g.impl();
  const int n = g.spec().n_xi;
  std::map<std::pair<int, int>, std::vector<cd>> modes;
  for (const auto& [key, coeff] : u.terms()) {
    auto e = Exponent::unpack(key);
    auto& r = modes[{e.weight1(), e.weight2()}];
    r.resize(im.x.size(), 0.0);
    const cd cf = coeff.to_complex();
    for (std::size_t i = 0; i < im.x.size(); ++i) {
      const double c = std::sqrt((1 + im.x[i]) / 2), s = std::sqrt((1 - im.x[i]) / 2);
      r[i] += cf * std::pow(c, static_cast<int>(e.a + e.c)) * std::pow(s, static_cast<int>(e.b + e.d));
    }
  }
  GridFn out(g);
  auto& buf = out.values();
  for (const auto& [w, r] : modes) {
    const int j = (w.first % n + n) % n, k = (w.second % n + n) % n;
    for (std::size_t i = 0; i < r.size(); ++i) buf[im.index(static_cast<int>(i), j, k)] += r[i];
  }
  fftw_execute_dft(im.bwd2, as_fftw(buf.data()), as_fftw(buf.data()));
  return out;
}

GridFn grid_sample(const Grid& g, const NumericField& u) {
  if (u.truncation() > g.exactness_degree())
    throw AliasingError("grid_sample: truncation " + std::to_string(u.truncation()) + " exceeds grid exactness degree " +
                        std::to_string(g.exactness_degree()));
  const auto& im = g.impl();
  std::vector<cd> c(im.entries.size());
  for (const auto& [k, v] : u.coefficients()) c[static_cast<std::size_t>(im.slot(k.p, k.q, k.m))] = v;
  return im.synthesis(g, c);
}

std::complex<double> integrate(const GridFn& f) {
  const auto& im = f.grid().impl();
  const int n = f.grid().spec().n_xi;
  cd total = 0;
  for (std::size_t i = 0; i < im.x.size(); ++i) {
    cd mean = 0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) mean += f.values()[im.index(static_cast<int>(i), j, k)];
    total += im.weight[i] * mean;
  }
  // theta ^ d theta = (1/2) dx dxi1 dxi2 in x = cos(2 eta).
  return total / (static_cast<double>(n) * n) * (2 * std::numbers::pi * std::numbers::pi);
}

NumericField grid_project(const GridFn& f, int truncation) {
  const auto& im = f.grid().impl();
  if (truncation > im.L)
    throw AliasingError("grid_project: truncation " + std::to_string(truncation) + " exceeds grid exactness degree " +
                        std::to_string(im.L));
  auto c = im.analysis(f);
  NumericField out(truncation);
  for (std::size_t s = 0; s < c.size(); ++s) {
    const auto& e = im.entries[s];
    if (e.p + e.q <= truncation) out.set({e.p, e.q, e.m}, c[s]);
  }
  return out;
}

}  // namespace crs
