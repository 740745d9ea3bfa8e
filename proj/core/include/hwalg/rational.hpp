#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace hwalg {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always stored in lowest terms with a positive denominator. Arithmetic is
/// carried out in 128-bit intermediates; a result that does not fit back into
/// 64 bits throws std::overflow_error rather than wrapping.
__extension__ using WideInt = __int128;

class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational inverse() const;
  Rational pow(int e) const;
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "3", "-1/2"
  std::string to_string() const;
  /// Accepts "3", "-1/2", "+4"; throws std::invalid_argument otherwise.
  static Rational parse(std::string_view text);

 private:
  static Rational from_wide(WideInt n, WideInt d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// a + b*i with exact rational parts.
struct Gaussian {
  Rational re;
  Rational im;

  constexpr Gaussian() = default;
  constexpr Gaussian(Rational r) : re(r) {}  // NOLINT(google-explicit-constructor)
  constexpr Gaussian(Rational r, Rational i) : re(r), im(i) {}
  constexpr Gaussian(std::int64_t r) : re(r) {}  // NOLINT(google-explicit-constructor)

  static Gaussian i() { return {0, 1}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_one() const { return re.is_one() && im.is_zero(); }

  Gaussian operator-() const { return {-re, -im}; }
  Gaussian& operator+=(const Gaussian& o);
  Gaussian& operator-=(const Gaussian& o);
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) = default;

  Gaussian conj() const { return {re, -im}; }
  Gaussian inverse() const;
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

}  // namespace hwalg
