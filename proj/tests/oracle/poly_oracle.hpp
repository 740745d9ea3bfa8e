#pragma once

// Test-only model of the Heisenberg-Weyl algebra as differential operators
// acting on polynomials in y0..y3. It shares no code with the engine:
// arithmetic is Boost.Multiprecision rationals, x_mu multiplies by y_mu and
// p_mu is -i hbar g_mu,mu d/dy_mu. Letter sequences are applied right to
// left, so no commutation rule is ever used.

#include <array>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;

struct C {
  Q re{0};
  Q im{0};

  bool is_zero() const { return re == 0 && im == 0; }
  friend C operator+(const C& a, const C& b) { return {a.re + b.re, a.im + b.im}; }
  friend C operator-(const C& a, const C& b) { return {a.re - b.re, a.im - b.im}; }
  friend C operator*(const C& a, const C& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const C& a, const C& b) { return a.re == b.re && a.im == b.im; }
  std::string str() const;
};

using Exponents = std::array<int, 4>;
/// Sparse polynomial; zero coefficients are never stored.
using Poly = std::map<Exponents, C>;
/// One polynomial per spinor component.
using Field = std::vector<Poly>;

/// Letters 0..3 are x0..x3, 4..7 are p0..p3.
constexpr int kPositionBase = 0;
constexpr int kMomentumBase = 4;

struct Params {
  C hbar{Q(1)};
  std::array<C, 4> metric{C{Q(-1)}, C{Q(1)}, C{Q(1)}, C{Q(1)}};
};

/// matrix * L_1 L_2 ... L_n, acting as L_1(L_2(...L_n(f))).
struct RawTerm {
  std::vector<std::vector<C>> matrix;
  std::vector<int> letters;
};

struct RawOperator {
  int dim = 1;
  std::vector<RawTerm> terms;
};

Poly multiply_by(const Poly& f, int mu);
Poly derivative(const Poly& f, int mu);
Field apply(const RawOperator& op, const Field& f, const Params& params);
Field apply_letters(const std::vector<int>& letters, const Field& f, const Params& params);

/// a(b(f)) - b(a(f)) without forming a product operator.
Field bracket_action(const RawOperator& a, const RawOperator& b, const Field& f, const Params& params);

/// Every field with a single monomial of total degree <= max_degree in one
/// component. An operator of order <= max_degree vanishing on these is zero.
std::vector<Field> probe_fields(int dim, int max_degree);

/// Largest number of momentum letters in any term.
int order(const RawOperator& op);

std::string to_string(const Field& f);

}  // namespace oracle
