#include "crs/jet.hpp"

#include <stdexcept>

namespace crs {

namespace {

template <class Op>
JetSeries map_coeffs(const JetSeries& u, Op op) {
  JetSeries out(u.order());
  for (int k = 0; k <= u.order(); ++k) out[k] = op(u[k]);
  return out;
}

}  // namespace

JetSeries::JetSeries(int order) {
  if (order < 0) throw std::invalid_argument("JetSeries: negative order");
  coeffs_.resize(static_cast<std::size_t>(order) + 1);
}

JetSeries::JetSeries(int order, PolyFn constant) : JetSeries(order) { coeffs_[0] = std::move(constant); }

JetSeries JetSeries::linear(int order, const PolyFn& u) {
  JetSeries out(order);
  if (order >= 1) out[1] = u;
  return out;
}

bool JetSeries::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

JetSeries& JetSeries::operator+=(const JetSeries& o) {
  if (o.order() != order()) throw std::invalid_argument("JetSeries: order mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

JetSeries& JetSeries::operator-=(const JetSeries& o) {
  if (o.order() != order()) throw std::invalid_argument("JetSeries: order mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

JetSeries& JetSeries::operator*=(const GaussianRational& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

JetSeries JetSeries::operator-() const {
  return map_coeffs(*this, [](const PolyFn& c) { return -c; });
}

JetSeries operator*(const JetSeries& a, const JetSeries& b) {
  if (a.order() != b.order()) throw std::invalid_argument("JetSeries: order mismatch");
  JetSeries out(a.order());
  for (int i = 0; i <= a.order(); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= a.order(); ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

JetSeries JetSeries::reciprocal() const {
  const PolyFn& c0 = coeffs_[0];
  if (c0.size() != 1 || c0.terms().front().first != 0)
    throw std::domain_error("JetSeries: reciprocal needs a nonzero constant leading term");
  const GaussianRational inv0 = GaussianRational(1) / c0.terms().front().second;
  JetSeries out(order());
  out[0] = PolyFn(inv0);
  for (int k = 1; k <= order(); ++k) {
    PolyFn s;
    for (int j = 1; j <= k; ++j)
      if (!coeffs_[static_cast<std::size_t>(j)].is_zero() && !out[k - j].is_zero()) s += coeffs_[static_cast<std::size_t>(j)] * out[k - j];
    out[k] = s * (-inv0);
  }
  return out;
}

std::complex<double> JetSeries::evaluate(double t, std::complex<double> z, std::complex<double> w) const {
  std::complex<double> sum = 0;
  double tk = 1;
  for (const auto& c : coeffs_) {
    sum += tk * c.evaluate(z, w);
    tk *= t;
  }
  return sum;
}

JetSeries apply_z1(const JetSeries& u) {
  return map_coeffs(u, [](const PolyFn& c) { return apply_z1(c); });
}
JetSeries apply_z1bar(const JetSeries& u) {
  return map_coeffs(u, [](const PolyFn& c) { return apply_z1bar(c); });
}
JetSeries apply_reeb(const JetSeries& u) {
  return map_coeffs(u, [](const PolyFn& c) { return apply_reeb(c); });
}
JetSeries conj(const JetSeries& u) {
  return map_coeffs(u, [](const PolyFn& c) { return c.conj(); });
}

std::vector<GaussianRational> integrate(const JetSeries& u) {
  std::vector<GaussianRational> out;
  for (const auto& c : u.coefficients()) out.push_back(integrate(c));
  return out;
}

}  // namespace crs
