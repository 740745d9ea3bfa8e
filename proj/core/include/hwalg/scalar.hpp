#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hwalg/rational.hpp"

namespace hwalg {

/// Names of the commuting physical parameters a ScalarValue may mention.
///
/// The registry is process-wide and append-only. It is seeded with
/// hbar, c, v, m, aNR, aUR, q, Q, lambda, phi1, phi2, phi3. `aUR` stands
/// for the starred ultra-relativistic constant (a_UR = v^2 * aUR).
namespace registry {
bool contains(std::string_view name);
/// Adds a user symbol; names must look like identifiers. Idempotent.
void add(std::string_view name);
std::vector<std::string> names();
}  // namespace registry

/// Sorted (symbol, exponent) pairs with no zero exponents.
using Exponents = std::vector<std::pair<std::string, int>>;

/// Numeric values for parameter symbols.
using Bindings = std::map<std::string, std::complex<double>, std::less<>>;

/// Gaussian-rational Laurent polynomial in the registered parameter symbols.
///
/// Canonical: no stored coefficient is zero, the empty map is zero. Values
/// are immutable in practice; every operation returns a fresh value.
class ScalarValue {
 public:
  using TermMap = std::map<Exponents, Gaussian>;

  ScalarValue() = default;
  ScalarValue(Gaussian g);       // NOLINT(google-explicit-constructor)
  ScalarValue(Rational r);       // NOLINT(google-explicit-constructor)
  ScalarValue(std::int64_t n);   // NOLINT(google-explicit-constructor)
  ScalarValue(int n) : ScalarValue(static_cast<std::int64_t>(n)) {}  // NOLINT

  static ScalarValue symbol(std::string_view name, int exponent = 1);
  static ScalarValue monomial(Gaussian coeff, Exponents exps);
  static ScalarValue imag() { return ScalarValue(Gaussian::i()); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  /// Single-term values are units of the Laurent ring.
  bool is_unit() const { return terms_.size() == 1; }
  /// Value when no symbol occurs.
  std::optional<Gaussian> constant() const;
  bool depends_on(std::string_view name) const;
  std::vector<std::string> symbols() const;

  ScalarValue operator-() const;
  ScalarValue& operator+=(const ScalarValue& o);
  ScalarValue& operator-=(const ScalarValue& o);
  ScalarValue& operator*=(const ScalarValue& o);

  friend ScalarValue operator+(ScalarValue a, const ScalarValue& b) { return a += b; }
  friend ScalarValue operator-(ScalarValue a, const ScalarValue& b) { return a -= b; }
  friend ScalarValue operator*(const ScalarValue& a, const ScalarValue& b);
  friend bool operator==(const ScalarValue& a, const ScalarValue& b) = default;

  /// Throws std::domain_error unless is_unit().
  ScalarValue inverse() const;
  /// Negative powers require a unit.
  ScalarValue pow(int e) const;
  /// Exact division by a unit.
  ScalarValue divided_by(const ScalarValue& unit) const { return *this * unit.inverse(); }

  /// Replace symbols by scalars. A bound symbol with negative exponent must
  /// map to a unit.
  ScalarValue substitute(const std::map<std::string, ScalarValue, std::less<>>& bindings) const;

  /// Floating evaluation; terms are summed in canonical (sorted) order.
  std::complex<double> evaluate(const Bindings& bindings) const;

  /// Text grammar: monomials joined by " + ", e.g. "-1/2i*hbar*c^-2 + 3".
  std::string to_string() const;
  std::string to_latex() const;
  static ScalarValue parse(std::string_view text);

 private:
  void add_term(const Exponents& e, const Gaussian& g);

  TermMap terms_;
};

/// JSON array of {coeff: [num_re, den_re, num_im, den_im], exps: {symbol: int}}.
nlohmann::json to_json(const ScalarValue& s);
ScalarValue scalar_from_json(const nlohmann::json& j);

std::string symbol_latex(std::string_view name);

/// Frequently used symbols.
namespace sym {
ScalarValue hbar(int e = 1);
ScalarValue c(int e = 1);
ScalarValue v(int e = 1);
ScalarValue m(int e = 1);
ScalarValue a_nr(int e = 1);
ScalarValue a_ur(int e = 1);
ScalarValue q(int e = 1);
ScalarValue Q(int e = 1);
ScalarValue phi(int axis, int e = 1);
ScalarValue i();
}  // namespace sym

}  // namespace hwalg
