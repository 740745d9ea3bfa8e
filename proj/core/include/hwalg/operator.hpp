#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hwalg/matrix.hpp"
#include "hwalg/scalar.hpp"

namespace hwalg {

/// Canonical generators, in normal order: x0 < x1 < x2 < x3 < p0 < ... < p3.
enum class Letter : std::uint8_t { x0, x1, x2, x3, p0, p1, p2, p3 };

constexpr int kLetterCount = 8;
constexpr Letter x_letter(int mu) { return static_cast<Letter>(mu); }
constexpr Letter p_letter(int mu) { return static_cast<Letter>(4 + mu); }
std::string letter_name(Letter l);

/// A normal-ordered monomial, stored as one exponent per letter.
///
/// Since all x letters precede all p letters and indices ascend within each
/// group, the exponent vector determines the word. Ordering is graded:
/// total degree first, then exponents lexicographically.
struct Word {
  std::array<std::uint8_t, kLetterCount> exps{};

  static Word of(Letter l, int power = 1);
  int degree() const;
  int operator[](Letter l) const { return exps[static_cast<int>(l)]; }
  bool is_empty() const { return degree() == 0; }
  /// Letters in normal order, with multiplicity.
  std::vector<Letter> letters() const;
  /// "x1*p2^2", empty word is "".
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
};

/// Constant commutation table:
///   [x_mu, p_nu] = i hbar g_{mu nu}
///   [x_mu, x_nu] = i hbar theta_{mu nu}
///   [p_mu, p_nu] = i hbar Sigma_{mu nu}
/// theta and Sigma must be antisymmetric.
class CommutationTable {
 public:
  using Array4 = std::array<std::array<ScalarValue, 4>, 4>;

  CommutationTable(Array4 g, Array4 theta, Array4 sigma);

  /// g = eta = diag(-1, +1, +1, +1), theta = Sigma = 0.
  static std::shared_ptr<const CommutationTable> minkowski();

  const Array4& g() const { return g_; }
  const Array4& theta() const { return theta_; }
  const Array4& sigma() const { return sigma_; }

  /// [a, b] as a scalar.
  const ScalarValue& bracket(Letter a, Letter b) const {
    return brackets_[static_cast<int>(a)][static_cast<int>(b)];
  }

  /// True when every bracket vanishes.
  bool is_degenerate() const;
  CommutationTable substitute(const std::map<std::string, ScalarValue, std::less<>>& b) const;

  friend bool operator==(const CommutationTable& a, const CommutationTable& b) {
    return a.g_ == b.g_ && a.theta_ == b.theta_ && a.sigma_ == b.sigma_;
  }

 private:
  Array4 g_;
  Array4 theta_;
  Array4 sigma_;
  std::array<std::array<ScalarValue, kLetterCount>, kLetterCount> brackets_;
};

using TablePtr = std::shared_ptr<const CommutationTable>;

/// Normal form of the product u * w as (word, scalar) pairs.
std::vector<std::pair<Word, ScalarValue>> multiply_words(const CommutationTable& table,
                                                         const Word& u, const Word& w);

/// One entry of the canonical term list.
struct Term {
  Word word;
  int basis = 0;
  ScalarValue coeff;
};

/// Finite sum of matrix-valued coefficients times normal-ordered words.
///
/// Terms are kept in a map keyed by word; a word whose matrix vanishes is
/// removed, so equality of expressions is equality of the maps.
class OperatorExpr {
 public:
  using TermMap = std::map<Word, MatrixValue>;

  explicit OperatorExpr(int dim = 1, TablePtr table = CommutationTable::minkowski());

  static OperatorExpr identity(int dim = 1, TablePtr table = CommutationTable::minkowski());
  static OperatorExpr scalar(const ScalarValue& s, int dim = 1,
                             TablePtr table = CommutationTable::minkowski());
  static OperatorExpr matrix(const MatrixValue& m, TablePtr table = CommutationTable::minkowski());
  static OperatorExpr letter(Letter l, int dim = 1, TablePtr table = CommutationTable::minkowski());
  static OperatorExpr term(const MatrixValue& m, const Word& w,
                           TablePtr table = CommutationTable::minkowski());

  static OperatorExpr x(int mu, int dim = 1) { return letter(x_letter(mu), dim); }
  static OperatorExpr p(int mu, int dim = 1) { return letter(p_letter(mu), dim); }
  /// H = c p0.
  static OperatorExpr H(int dim = 1);
  /// t = x0 / c.
  static OperatorExpr t(int dim = 1);

  int dim() const { return dim_; }
  const TablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  /// Canonical term list sorted by (word, basis index), zero terms omitted.
  std::vector<Term> canonical_terms() const;
  MatrixValue coefficient(const Word& w) const;

  OperatorExpr operator-() const;
  OperatorExpr& operator+=(const OperatorExpr& o);
  OperatorExpr& operator-=(const OperatorExpr& o);
  OperatorExpr& operator*=(const ScalarValue& s);

  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator*(OperatorExpr a, const ScalarValue& s) { return a *= s; }
  friend OperatorExpr operator*(const ScalarValue& s, OperatorExpr a) { return a *= s; }
  /// Left multiplication by a constant matrix.
  friend OperatorExpr operator*(const MatrixValue& m, const OperatorExpr& a);
  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b);

  /// Replace parameter symbols by scalars in every coefficient. The table is
  /// kept; pair with with_table(table()->substitute(...)) to move it too.
  OperatorExpr substitute(const std::map<std::string, ScalarValue, std::less<>>& bindings) const;
  /// Same expression read under a different table (words are kept as is).
  OperatorExpr with_table(TablePtr table) const;
  /// Promote a d = 1 expression to dim by tensoring with the identity.
  OperatorExpr lifted(int dim) const;

  /// Every parameter symbol mentioned by a coefficient.
  std::vector<std::string> symbols() const;

 private:
  void add(const Word& w, const MatrixValue& m);

  int dim_;
  TablePtr table_;
  TermMap terms_;
};

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b);

/// exp(D) X exp(-D) as the terminating series sum_n ad_D^n(X) / n!.
struct AdjointSeries {
  OperatorExpr value;
  /// Highest n with ad_D^n(X) != 0 (0 when [D, X] = 0).
  int order = 0;
  /// ad_D^n(X) for n = 0..order.
  std::vector<OperatorExpr> nested;
};

constexpr int kDefaultAdjointDepth = 16;

/// Throws NonNilpotentError when ad_D^n(X) is still nonzero at n = max_depth.
AdjointSeries adjoint_series(const OperatorExpr& d, const OperatorExpr& x,
                             int max_depth = kDefaultAdjointDepth);

/// Replace letters by expressions inside every word and renormalize.
OperatorExpr substitute_letters(const OperatorExpr& expr,
                                const std::map<Letter, OperatorExpr>& replacements);

/// Text grammar: terms joined by " + ", each "(coeff)*basis*letters",
/// e.g. "(-i*hbar)*I*x1*p1^2". Zero is "0".
std::string to_string(const OperatorExpr& e);
OperatorExpr parse_operator(std::string_view text, int dim = 1,
                            TablePtr table = CommutationTable::minkowski());
std::string to_latex(const OperatorExpr& e);
/// Readable rendering with H = c p0 and t = x0 / c substituted back.
std::string to_physics_string(const OperatorExpr& e);

/// {dim, terms: [{word, basis, coeff}]} in canonical order.
nlohmann::json to_json(const OperatorExpr& e);
OperatorExpr operator_from_json(const nlohmann::json& j,
                                TablePtr table = CommutationTable::minkowski());

}  // namespace hwalg
