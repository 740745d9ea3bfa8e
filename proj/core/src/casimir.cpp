#include "hwalg/casimir.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

#include "hwalg/generators.hpp"

namespace hwalg {

namespace {

struct Echelon {
  ScalarMatrix rows;
  std::vector<std::size_t> pivot_cols;  // pivot column of rows[k]
};

// Gauss-Jordan without division by non-units.
Echelon reduce(ScalarMatrix a, std::size_t columns) {
  Echelon e;
  std::size_t next = 0;
  for (std::size_t col = 0; col < columns && next < a.size(); ++col) {
    std::size_t best = a.size();
    for (std::size_t r = next; r < a.size(); ++r) {
      if (a[r][col].is_zero()) continue;
      if (best == a.size()) best = r;
      if (a[r][col].is_unit()) {
        best = r;
        break;
      }
    }
    if (best == a.size()) continue;
    std::swap(a[next], a[best]);
    const ScalarValue pivot = a[next][col];
    const bool unit = pivot.is_unit();
    const ScalarValue inv = unit ? pivot.inverse() : ScalarValue();
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == next || a[r][col].is_zero()) continue;
      const ScalarValue f = a[r][col];
      for (std::size_t c = 0; c < columns; ++c) {
        if (unit) {
          if (!a[next][c].is_zero()) a[r][c] -= f * inv * a[next][c];
        } else {
          a[r][c] = pivot * a[r][c] - f * a[next][c];
        }
      }
    }
    e.pivot_cols.push_back(col);
    ++next;
  }
  a.resize(next);
  e.rows = std::move(a);
  return e;
}

void normalize(std::vector<ScalarValue>& v, int preferred) {
  int idx = -1;
  if (preferred >= 0 && preferred < static_cast<int>(v.size()) && v[preferred].is_unit()) {
    idx = preferred;
  }
  for (std::size_t k = 0; idx < 0 && k < v.size(); ++k) {
    if (v[k].is_unit()) idx = static_cast<int>(k);
  }
  if (idx < 0) return;
  const ScalarValue inv = v[idx].inverse();
  for (auto& x : v) x *= inv;
}

}  // namespace

std::vector<std::vector<ScalarValue>> nullspace(const ScalarMatrix& a, std::size_t columns) {
  for (const auto& row : a) {
    if (row.size() != columns) throw std::invalid_argument("ragged matrix");
  }
  const Echelon e = reduce(a, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<ScalarValue>> out;
  for (std::size_t f = 0; f < columns; ++f) {
    if (is_pivot[f]) continue;
    std::vector<ScalarValue> x(columns);
    // Pivot rows touching f whose pivot is not a unit contribute to the scale.
    std::vector<std::size_t> nonunit;
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
      const auto& piv = e.rows[r][e.pivot_cols[r]];
      if (!e.rows[r][f].is_zero() && !piv.is_unit()) nonunit.push_back(r);
    }
    auto scale_without = [&](std::size_t skip) {
      ScalarValue s(1);
      for (auto r : nonunit) {
        if (r != skip) s *= e.rows[r][e.pivot_cols[r]];
      }
      return s;
    };
    x[f] = scale_without(e.rows.size());
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
      const auto& a_rf = e.rows[r][f];
      if (a_rf.is_zero()) continue;
      const auto& piv = e.rows[r][e.pivot_cols[r]];
      x[e.pivot_cols[r]] = piv.is_unit() ? -(a_rf * x[f] * piv.inverse()) : -(a_rf * scale_without(r));
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::size_t rank(const ScalarMatrix& a, std::size_t columns) {
  return reduce(a, columns).pivot_cols.size();
}

void Ansatz::add(std::string label, OperatorExpr monomial) {
  if (!monomials.empty() && monomial.dim() != monomials.front().dim()) {
    throw std::invalid_argument("ansatz monomials must share a dimension");
  }
  labels.push_back(std::move(label));
  monomials.push_back(std::move(monomial));
}

int Ansatz::dim() const { return monomials.empty() ? 1 : monomials.front().dim(); }

int Ansatz::identity_index() const {
  for (std::size_t k = 0; k < monomials.size(); ++k) {
    if (monomials[k] == OperatorExpr::identity(dim())) return static_cast<int>(k);
  }
  return -1;
}

void Ansatz::validate() const {
  std::map<std::pair<Word, int>, std::vector<ScalarValue>> rows;
  for (std::size_t k = 0; k < monomials.size(); ++k) {
    for (const auto& t : monomials[k].canonical_terms()) {
      auto& row = rows[{t.word, t.basis}];
      row.resize(monomials.size());
      row[k] = t.coeff;
    }
  }
  ScalarMatrix m;
  for (auto& [key, row] : rows) m.push_back(std::move(row));
  if (!nullspace(m, monomials.size()).empty()) {
    throw std::invalid_argument("ansatz monomials are linearly dependent");
  }
}

CasimirSolution solve_casimir(const Ansatz& ansatz, const std::vector<NamedOperator>& constraints) {
  ansatz.validate();
  const std::size_t n = ansatz.monomials.size();
  std::map<std::tuple<std::size_t, Word, int>, std::vector<ScalarValue>> rows;
  for (std::size_t g = 0; g < constraints.size(); ++g) {
    for (std::size_t k = 0; k < n; ++k) {
      OperatorExpr br = commutator(ansatz.monomials[k], constraints[g].value);
      for (const auto& t : br.canonical_terms()) {
        auto& row = rows[{g, t.word, t.basis}];
        row.resize(n);
        row[k] = t.coeff;
      }
    }
  }
  ScalarMatrix m;
  m.reserve(rows.size());
  for (auto& [key, row] : rows) m.push_back(std::move(row));

  CasimirSolution sol;
  sol.equations = m.size();
  sol.rank = rank(m, n);
  sol.nullspace = nullspace(m, n);
  const int id = ansatz.identity_index();
  for (auto v : sol.nullspace) {
    if (id >= 0) v[id] = ScalarValue();
    bool trivial = true;
    for (const auto& x : v) trivial = trivial && x.is_zero();
    if (trivial) continue;
    normalize(v, ansatz.normalize_on);
    OperatorExpr op(ansatz.dim(), ansatz.monomials.front().table());
    for (std::size_t k = 0; k < n; ++k) {
      if (!v[k].is_zero()) op += ansatz.monomials[k] * v[k];
    }
    sol.family.push_back(std::move(v));
    sol.operators.push_back(std::move(op));
  }
  return sol;
}

CouplingSolution solve_coupling(const std::vector<OperatorExpr>& base,
                                const std::vector<OperatorExpr>& slope) {
  if (base.size() != slope.size()) throw std::invalid_argument("coupling system size mismatch");
  std::map<std::tuple<std::size_t, Word, int>, std::vector<ScalarValue>> rows;
  for (std::size_t k = 0; k < base.size(); ++k) {
    for (int col = 0; col < 2; ++col) {
      for (const auto& t : (col == 0 ? slope : base)[k].canonical_terms()) {
        auto& row = rows[{k, t.word, t.basis}];
        row.resize(2);
        row[col] = t.coeff;
      }
    }
  }
  ScalarMatrix m;
  for (auto& [key, row] : rows) m.push_back(std::move(row));
  auto ns = nullspace(m, 2);

  CouplingSolution out;
  if (ns.size() == 2) {
    out.underdetermined = true;
    out.status = "every value satisfies the constraints";
  } else if (ns.empty() || ns[0][1].is_zero()) {
    out.status = "no solution";
  } else if (!ns[0][1].is_unit()) {
    out.status = "solution is not a Laurent monomial ratio";
  } else {
    out.value = ns[0][0] * ns[0][1].inverse();
    out.status = "unique";
  }
  return out;
}

OperatorExpr pauli_momentum() {
  OperatorExpr out(2);
  for (int a = 1; a <= 3; ++a) out += pauli(a) * OperatorExpr::p(a, 2);
  return out;
}

OperatorExpr dirac_momentum() {
  OperatorExpr out(4);
  for (int rho = 0; rho < 4; ++rho) out += gamma_upper(rho) * OperatorExpr::p(rho, 4);
  return out;
}

namespace {

CouplingReport finish(std::string name, const std::vector<std::string>& labels,
                      const std::vector<OperatorExpr>& base, const std::vector<OperatorExpr>& slope,
                      ScalarValue candidate) {
  CouplingReport rep;
  rep.name = std::move(name);
  rep.solved = solve_coupling(base, slope);
  rep.candidate = std::move(candidate);
  rep.candidate_satisfies = true;
  for (std::size_t k = 0; k < base.size(); ++k) {
    if (!(base[k] + slope[k] * rep.candidate).is_zero()) rep.candidate_satisfies = false;
    rep.uncoupled_residuals.push_back({labels[k], base[k]});
  }
  return rep;
}

}  // namespace

CouplingReport solve_matrix_coupling() {
  const OperatorExpr sp = pauli_momentum();
  std::vector<std::string> labels;
  std::vector<OperatorExpr> base, slope;
  for (int k = 1; k <= 3; ++k) {
    for (int j = k + 1; j <= 3; ++j) {
      labels.push_back("[sigma.p, M" + std::to_string(k) + std::to_string(j) + "]");
      base.push_back(commutator(sp, make_rotation(k, j, 2)));
      slope.push_back(commutator(sp, OperatorExpr::matrix(commutator(pauli(k), pauli(j)))));
    }
  }
  return finish("spin coupling e", labels, base, slope,
                ScalarValue(Gaussian(0, Rational(-1, 2))) * sym::hbar());
}

CouplingReport solve_dirac_coupling() {
  const OperatorExpr gp = dirac_momentum();
  std::vector<std::string> labels;
  std::vector<OperatorExpr> base, slope;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu + 1; nu < 4; ++nu) {
      labels.push_back("[gamma.p, M" + std::to_string(mu) + std::to_string(nu) + "]");
      base.push_back(commutator(gp, make_rotation(mu, nu, 4)));
      slope.push_back(commutator(gp, OperatorExpr::matrix(sigma(mu, nu))));
    }
  }
  return finish("Dirac spin coupling k0", labels, base, slope, -sym::hbar());
}

}  // namespace hwalg
