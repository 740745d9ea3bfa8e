#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hwalg/operator.hpp"

namespace hwalg {

/// Row-major matrix over the parameter ring.
using ScalarMatrix = std::vector<std::vector<ScalarValue>>;

/// Basis of {x : A x = 0} over the fraction field of the parameter ring.
///
/// Fraction-free Gauss-Jordan elimination; single-term pivots are preferred
/// and divided exactly, other pivots are cleared by cross-multiplication.
/// Each returned vector has polynomial entries.
std::vector<std::vector<ScalarValue>> nullspace(const ScalarMatrix& a, std::size_t columns);

/// Rank of a matrix over the fraction field.
std::size_t rank(const ScalarMatrix& a, std::size_t columns);

/// Linear combination sum_n c_n m_n with unknown scalar coefficients c_n.
struct Ansatz {
  std::vector<std::string> labels;
  std::vector<OperatorExpr> monomials;
  /// Column used to normalize solutions (coefficient set to 1 when it is a
  /// single-term scalar), -1 for the first eligible column.
  int normalize_on = -1;

  void add(std::string label, OperatorExpr monomial);
  int dim() const;
  /// Index of the identity monomial, or -1.
  int identity_index() const;
  /// Throws std::invalid_argument if the monomials are linearly dependent.
  void validate() const;
};

struct NamedOperator {
  std::string name;
  OperatorExpr value;
};

struct CasimirSolution {
  /// Raw nullspace, one coefficient vector per basis element.
  std::vector<std::vector<ScalarValue>> nullspace;
  /// Nullspace modulo the identity direction, identity coefficient dropped.
  std::vector<std::vector<ScalarValue>> family;
  /// sum_n c_n m_n for each vector of `family`.
  std::vector<OperatorExpr> operators;
  std::size_t equations = 0;
  std::size_t rank = 0;

  bool found() const { return !operators.empty(); }
  std::size_t dimension() const { return operators.size(); }
};

/// Centralizer of `constraints` inside the span of the ansatz: every
/// canonical coefficient of [sum c_n m_n, G] is set to zero.
CasimirSolution solve_casimir(const Ansatz& ansatz, const std::vector<NamedOperator>& constraints);

/// Solve base_k + e * slope_k = 0 for all k in one scalar unknown e.
struct CouplingSolution {
  std::optional<ScalarValue> value;
  /// True when every e works (all slopes and bases vanish).
  bool underdetermined = false;
  std::string status;
};

CouplingSolution solve_coupling(const std::vector<OperatorExpr>& base,
                                const std::vector<OperatorExpr>& slope);

/// Result of a spin-coupling solve together with a candidate value.
struct CouplingReport {
  std::string name;
  CouplingSolution solved;
  ScalarValue candidate;
  bool candidate_satisfies = false;
  /// Constraint residuals with the coupling switched off.
  std::vector<NamedOperator> uncoupled_residuals;
};

/// e in E_kj = e [sigma_k, sigma_j] such that sigma.p commutes with
/// M_kj I2 + E_kj for all k < j. The candidate -i hbar / 2 is tested.
CouplingReport solve_matrix_coupling();
/// k0 such that gamma^rho p_rho commutes with M_mu,nu I4 + k0 sigma_mu,nu
/// for all mu < nu. The candidate -hbar is tested.
CouplingReport solve_dirac_coupling();

/// sum_a sigma_a p_a at d = 2.
OperatorExpr pauli_momentum();
/// gamma^rho p_rho at d = 4.
OperatorExpr dirac_momentum();

}  // namespace hwalg
