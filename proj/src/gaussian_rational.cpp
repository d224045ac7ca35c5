#include "crs/gaussian_rational.hpp"

#include <cctype>
#include <stdexcept>

namespace crs {

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  mpq_class d = o.norm2();
  if (sgn(d) == 0) throw std::domain_error("GaussianRational: division by zero");
  mpq_class r = (re_ * o.re_ + im_ * o.im_) / d;
  mpq_class i = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

void GaussianRational::add_product(const GaussianRational& a, const GaussianRational& b) {
  thread_local mpq_class tmp;
  const bool ai = sgn(a.im_) != 0;
  const bool bi = sgn(b.im_) != 0;
  mpq_mul(tmp.get_mpq_t(), a.re_.get_mpq_t(), b.re_.get_mpq_t());
  re_ += tmp;
  if (ai && bi) {
    mpq_mul(tmp.get_mpq_t(), a.im_.get_mpq_t(), b.im_.get_mpq_t());
    re_ -= tmp;
  }
  if (bi) {
    mpq_mul(tmp.get_mpq_t(), a.re_.get_mpq_t(), b.im_.get_mpq_t());
    im_ += tmp;
  }
  if (ai) {
    mpq_mul(tmp.get_mpq_t(), a.im_.get_mpq_t(), b.re_.get_mpq_t());
    im_ += tmp;
  }
}

std::string GaussianRational::to_string() const {
  if (is_real()) return re_.get_str();
  std::string s;
  if (sgn(re_) != 0) s = re_.get_str() + (sgn(im_) > 0 ? "+" : "");
  return s + im_.get_str() + "i";
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  s = s.substr(b);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  try {
    auto dot = s.find('.');
    auto exp = s.find_first_of("eE");
    if (dot == std::string::npos && exp == std::string::npos) {
      if (s[0] == '+') s.erase(0, 1);
      mpq_class q(s, 10);
      if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
      q.canonicalize();
      return q;
    }
    // Decimal literal: mantissa digits over a power of ten, then the exponent.
    std::string mant = s.substr(0, exp);
    long e10 = exp == std::string::npos ? 0 : std::stol(s.substr(exp + 1));
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
      neg = mant[0] == '-';
      mant.erase(0, 1);
    }
    std::string digits;
    long frac = 0;
    bool seen_dot = false;
    for (char c : mant) {
      if (c == '.') {
        if (seen_dot) throw std::invalid_argument("bad decimal");
        seen_dot = true;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
        if (seen_dot) ++frac;
      } else {
        throw std::invalid_argument("bad decimal");
      }
    }
    if (digits.empty()) throw std::invalid_argument("bad decimal");
    mpz_class num(digits, 10);
    e10 -= frac;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(e10 < 0 ? -e10 : e10));
    mpq_class q = e10 < 0 ? mpq_class(num, p10) : mpq_class(num * p10);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("invalid rational literal '" + std::string(text) + "'");
  }
}

}  // namespace crs
