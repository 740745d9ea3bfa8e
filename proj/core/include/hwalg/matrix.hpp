#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hwalg/scalar.hpp"

namespace hwalg {

/// Dense d x d matrix over ScalarValue, d in {1, 2, 4}.
///
/// d = 1 is the scalar embedding so that every operator term carries a
/// matrix uniformly. Entries are stored row-major.
class MatrixValue {
 public:
  MatrixValue() : MatrixValue(1) {}
  explicit MatrixValue(int dim);

  static MatrixValue identity(int dim);
  static MatrixValue scalar(int dim, const ScalarValue& s);

  int dim() const { return dim_; }
  const ScalarValue& at(int r, int c) const { return entries_[index(r, c)]; }
  ScalarValue& at(int r, int c) { return entries_[index(r, c)]; }
  const std::vector<ScalarValue>& entries() const { return entries_; }

  bool is_zero() const;
  bool is_identity() const;
  ScalarValue trace() const;

  MatrixValue operator-() const;
  MatrixValue& operator+=(const MatrixValue& o);
  MatrixValue& operator-=(const MatrixValue& o);
  MatrixValue& operator*=(const ScalarValue& s);

  friend MatrixValue operator+(MatrixValue a, const MatrixValue& b) { return a += b; }
  friend MatrixValue operator-(MatrixValue a, const MatrixValue& b) { return a -= b; }
  friend MatrixValue operator*(const MatrixValue& a, const MatrixValue& b);
  friend MatrixValue operator*(MatrixValue a, const ScalarValue& s) { return a *= s; }
  friend MatrixValue operator*(const ScalarValue& s, MatrixValue a) { return a *= s; }
  friend bool operator==(const MatrixValue& a, const MatrixValue& b) = default;

  MatrixValue substitute(const std::map<std::string, ScalarValue, std::less<>>& bindings) const;

  /// Coefficients in the canonical basis of this dimension (see basis_name).
  std::vector<ScalarValue> decompose() const;

 private:
  int index(int r, int c) const;

  int dim_;
  std::vector<ScalarValue> entries_;
};

MatrixValue commutator(const MatrixValue& a, const MatrixValue& b);
MatrixValue anticommutator(const MatrixValue& a, const MatrixValue& b);

/// Pauli matrix sigma_i, i in 1..3.
MatrixValue pauli(int i);
/// Dirac matrix gamma_mu (lower index) for eta = diag(-1, +1, +1, +1):
/// gamma_0 = i diag(I2, -I2), gamma_k = [[0, sigma_k], [sigma_k, 0]].
MatrixValue gamma(int mu);
/// gamma^mu = eta^{mu mu} gamma_mu.
MatrixValue gamma_upper(int mu);
/// (i/2) [gamma_mu, gamma_nu].
MatrixValue sigma(int mu, int nu);
/// e * [sigma_i, sigma_j].
MatrixValue spin_coupling(int i, int j, const ScalarValue& e);

/// Minkowski metric entry (diagonal, -1 for the time index).
int eta(int mu, int nu);
/// Levi-Civita symbol on 1..3.
int levi_civita(int i, int j, int k);

/// Size of the canonical basis (dim^2) and its members.
///   d=1: I
///   d=2: I, s1, s2, s3
///   d=4: Clifford products I, g0..g3, g01..g23, g012..g123, g0123
int basis_size(int dim);
std::string basis_name(int dim, int index);
/// Index of `name` in the basis of `dim`, or -1.
int basis_index(int dim, const std::string& name);
const MatrixValue& basis_matrix(int dim, int index);
std::string basis_latex(int dim, int index);

/// {dim, entries: row-major array of ScalarValue JSON}.
nlohmann::json to_json(const MatrixValue& m);
MatrixValue matrix_from_json(const nlohmann::json& j);

}  // namespace hwalg
