#include "hwalg/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hwalg {

namespace {

using wide = WideInt;

wide wide_gcd(wide a, wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(wide v) {
  return v >= std::numeric_limits<std::int64_t>::min() + 1 &&
         v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(n, d);
}

Rational Rational::from_wide(wide n, wide d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  wide g = wide_gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n == 0) d = 1;
  if (!fits(n) || !fits(d)) throw std::overflow_error("rational arithmetic overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  return r;
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == o.den_) {
    *this = from_wide(wide(num_) + o.num_, den_);
  } else {
    *this = from_wide(wide(num_) * o.den_ + wide(o.num_) * den_, wide(den_) * o.den_);
  }
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  *this = from_wide(wide(num_) * o.num_, wide(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  *this = from_wide(wide(num_) * o.den_, wide(den_) * o.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return wide(a.num_) * b.den_ <=> wide(b.num_) * a.den_;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return from_wide(den_, num_);
}

Rational Rational::pow(int e) const {
  Rational base = e < 0 ? inverse() : *this;
  Rational out = 1;
  for (int k = 0; k < (e < 0 ? -e : e); ++k) out *= base;
  return out;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
}

Gaussian& Gaussian::operator+=(const Gaussian& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = r;
  im = i;
  return *this;
}

Gaussian Gaussian::inverse() const {
  Rational n = re * re + im * im;
  if (n.is_zero()) throw std::domain_error("inverse of zero");
  return {re / n, -im / n};
}

Gaussian& Gaussian::operator/=(const Gaussian& o) { return *this *= o.inverse(); }

}  // namespace hwalg
