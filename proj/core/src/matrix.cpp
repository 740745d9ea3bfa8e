#include "hwalg/matrix.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hwalg/errors.hpp"

namespace hwalg {

namespace {

void check_dim(int dim) {
  if (dim != 1 && dim != 2 && dim != 4) {
    throw std::invalid_argument("matrix dimension must be 1, 2 or 4");
  }
}

void require_same_dim(const MatrixValue& a, const MatrixValue& b) {
  if (a.dim() != b.dim()) throw IncompatibleOperands("matrix dimension mismatch");
}

struct Basis {
  std::vector<std::string> names;
  std::vector<std::string> latex;
  std::vector<MatrixValue> matrices;
  std::vector<MatrixValue> inverses;
  ScalarValue trace_norm;
};

Basis build_basis(int dim) {
  Basis b;
  if (dim == 1) {
    b.names = {"I"};
    b.latex = {""};
    b.matrices = {MatrixValue::identity(1)};
  } else if (dim == 2) {
    b.names = {"I", "s1", "s2", "s3"};
    b.latex = {"", "\\sigma_{1}", "\\sigma_{2}", "\\sigma_{3}"};
    b.matrices = {MatrixValue::identity(2), pauli(1), pauli(2), pauli(3)};
  } else {
    // Subsets of {0,1,2,3} by size, then lexicographically.
    std::vector<std::vector<int>> subsets{{}};
    for (int size = 1; size <= 4; ++size) {
      for (int mask = 0; mask < 16; ++mask) {
        std::vector<int> s;
        for (int k = 0; k < 4; ++k) {
          if (mask & (1 << k)) s.push_back(k);
        }
        if (static_cast<int>(s.size()) == size) subsets.push_back(s);
      }
    }
    std::sort(subsets.begin() + 1, subsets.end(), [](const auto& x, const auto& y) {
      return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    for (const auto& s : subsets) {
      MatrixValue g = MatrixValue::identity(4);
      std::string name = s.empty() ? "I" : "g";
      std::string tex;
      for (int mu : s) {
        g = g * gamma(mu);
        name += std::to_string(mu);
        tex += "\\gamma_{" + std::to_string(mu) + "}";
      }
      b.names.push_back(name);
      b.latex.push_back(tex);
      b.matrices.push_back(g);
    }
  }
  for (const auto& g : b.matrices) {
    // Every basis element squares to +-I.
    MatrixValue sq = g * g;
    b.inverses.push_back(sq.at(0, 0) == ScalarValue(1) ? g : -g);
  }
  b.trace_norm = ScalarValue(Rational(1, dim));
  return b;
}

const Basis& basis(int dim) {
  check_dim(dim);
  static const std::array<Basis, 3> cache{build_basis(1), build_basis(2), build_basis(4)};
  return cache[dim == 1 ? 0 : dim == 2 ? 1 : 2];
}

}  // namespace

MatrixValue::MatrixValue(int dim) : dim_(dim) {
  check_dim(dim);
  entries_.resize(static_cast<std::size_t>(dim * dim));
}

int MatrixValue::index(int r, int c) const {
  if (r < 0 || c < 0 || r >= dim_ || c >= dim_) throw std::out_of_range("matrix index");
  return r * dim_ + c;
}

MatrixValue MatrixValue::identity(int dim) { return scalar(dim, ScalarValue(1)); }

MatrixValue MatrixValue::scalar(int dim, const ScalarValue& s) {
  MatrixValue m(dim);
  for (int k = 0; k < dim; ++k) m.at(k, k) = s;
  return m;
}

bool MatrixValue::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

bool MatrixValue::is_identity() const { return *this == identity(dim_); }

ScalarValue MatrixValue::trace() const {
  ScalarValue t;
  for (int k = 0; k < dim_; ++k) t += at(k, k);
  return t;
}

MatrixValue MatrixValue::operator-() const {
  MatrixValue m = *this;
  for (auto& e : m.entries_) e = -e;
  return m;
}

MatrixValue& MatrixValue::operator+=(const MatrixValue& o) {
  require_same_dim(*this, o);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

MatrixValue& MatrixValue::operator-=(const MatrixValue& o) {
  require_same_dim(*this, o);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

MatrixValue& MatrixValue::operator*=(const ScalarValue& s) {
  for (auto& e : entries_) e = e * s;
  return *this;
}

MatrixValue operator*(const MatrixValue& a, const MatrixValue& b) {
  require_same_dim(a, b);
  const int d = a.dim();
  MatrixValue out(d);
  for (int r = 0; r < d; ++r) {
    for (int k = 0; k < d; ++k) {
      const ScalarValue& ark = a.at(r, k);
      if (ark.is_zero()) continue;
      for (int c = 0; c < d; ++c) {
        const ScalarValue& bkc = b.at(k, c);
        if (!bkc.is_zero()) out.at(r, c) += ark * bkc;
      }
    }
  }
  return out;
}

MatrixValue MatrixValue::substitute(
    const std::map<std::string, ScalarValue, std::less<>>& bindings) const {
  MatrixValue m = *this;
  for (auto& e : m.entries_) e = e.substitute(bindings);
  return m;
}

std::vector<ScalarValue> MatrixValue::decompose() const {
  const Basis& b = basis(dim_);
  std::vector<ScalarValue> out;
  out.reserve(b.matrices.size());
  for (const auto& inv : b.inverses) out.push_back((inv * *this).trace() * b.trace_norm);
  return out;
}

MatrixValue commutator(const MatrixValue& a, const MatrixValue& b) { return a * b - b * a; }
MatrixValue anticommutator(const MatrixValue& a, const MatrixValue& b) { return a * b + b * a; }

MatrixValue pauli(int i) {
  MatrixValue s(2);
  switch (i) {
    case 1:
      s.at(0, 1) = 1;
      s.at(1, 0) = 1;
      break;
    case 2:
      s.at(0, 1) = -ScalarValue::imag();
      s.at(1, 0) = ScalarValue::imag();
      break;
    case 3:
      s.at(0, 0) = 1;
      s.at(1, 1) = -1;
      break;
    default:
      throw std::out_of_range("Pauli index must be 1..3");
  }
  return s;
}

MatrixValue gamma(int mu) {
  if (mu < 0 || mu > 3) throw std::out_of_range("gamma index must be 0..3");
  MatrixValue g(4);
  if (mu == 0) {
    for (int k = 0; k < 4; ++k) g.at(k, k) = k < 2 ? ScalarValue::imag() : -ScalarValue::imag();
    return g;
  }
  MatrixValue s = pauli(mu);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      g.at(r, c + 2) = s.at(r, c);
      g.at(r + 2, c) = s.at(r, c);
    }
  }
  return g;
}

MatrixValue gamma_upper(int mu) { return gamma(mu) * ScalarValue(eta(mu, mu)); }

MatrixValue sigma(int mu, int nu) {
  return commutator(gamma(mu), gamma(nu)) * ScalarValue(Gaussian(0, Rational(1, 2)));
}

MatrixValue spin_coupling(int i, int j, const ScalarValue& e) {
  return commutator(pauli(i), pauli(j)) * e;
}

int eta(int mu, int nu) {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3) throw std::out_of_range("spacetime index must be 0..3");
  if (mu != nu) return 0;
  return mu == 0 ? -1 : 1;
}

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // Even permutations of (1,2,3).
  if ((i == 1 && j == 2) || (i == 2 && j == 3) || (i == 3 && j == 1)) return 1;
  return -1;
}

int basis_size(int dim) {
  check_dim(dim);
  return dim * dim;
}

std::string basis_name(int dim, int index) { return basis(dim).names.at(index); }

int basis_index(int dim, const std::string& name) {
  const auto& names = basis(dim).names;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == name) return static_cast<int>(k);
  }
  return -1;
}

const MatrixValue& basis_matrix(int dim, int index) { return basis(dim).matrices.at(index); }

std::string basis_latex(int dim, int index) { return basis(dim).latex.at(index); }

nlohmann::json to_json(const MatrixValue& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : m.entries()) entries.push_back(to_json(e));
  return {{"dim", m.dim()}, {"entries", entries}};
}

MatrixValue matrix_from_json(const nlohmann::json& j) {
  MatrixValue m(j.at("dim").get<int>());
  const auto& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != m.entries().size()) {
    throw ParseError("matrix JSON entry count does not match dim");
  }
  for (int r = 0; r < m.dim(); ++r) {
    for (int c = 0; c < m.dim(); ++c) m.at(r, c) = scalar_from_json(entries[r * m.dim() + c]);
  }
  return m;
}

}  // namespace hwalg
