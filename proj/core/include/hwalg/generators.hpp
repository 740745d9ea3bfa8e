#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hwalg/operator.hpp"

namespace hwalg {

/// x_i p_j - x_j p_i for spacetime indices 0..3 (lower indices).
OperatorExpr make_rotation(int i, int j, int dim = 1);
/// Galilean boost 2 aNR t p_i + x_i, i in 1..3.
OperatorExpr make_boost_nr(int i, int dim = 1);
/// Ultra-boost (v^2/c^2) 2 aUR x_i H + t, i in 1..3.
OperatorExpr make_boost_ur(int i, int dim = 1);
/// sum_mu x_mu p_mu.
OperatorExpr make_dilation(int dim = 1);

enum class Regime { relativistic, nonrelativistic, ultrarelativistic, ultrarelativistic_spin };

/// Accepts the long names and the CLI short forms rel, nr, ur, ur-spin.
Regime parse_regime(std::string_view name);
std::string regime_name(Regime r);

/// Named generators of one regime.
///
/// Names: p0..p3, H, M01..M23 (every ordered pair, M_ii included so index
/// loops stay uniform), BNR1..3, BUR1..3, D. In the spin regime the
/// rotations are J_ij = M_ij I2 + E_ij and everything else is lifted to d = 2.
struct GeneratorSet {
  Regime regime;
  int dim = 1;
  std::map<std::string, OperatorExpr> generators;

  /// Throws UnknownGenerator.
  const OperatorExpr& at(const std::string& name) const;
};

GeneratorSet relativistic_generators();
GeneratorSet nonrelativistic_generators();
GeneratorSet ultrarelativistic_generators();
/// spin_coefficient is the e of E_ij = e [sigma_i, sigma_j].
GeneratorSet ultrarelativistic_spin_generators(const ScalarValue& spin_coefficient);
GeneratorSet generators_for(Regime r, const ScalarValue& spin_coefficient);

/// One expected bracket [left, right] = expected.
struct BracketRelation {
  std::string family;
  std::string left;
  std::string right;
  OperatorExpr expected;
};

struct AlgebraSpec {
  std::string name;
  std::vector<BracketRelation> relations;
  /// Interpretive notes carried into the report footer.
  std::vector<std::string> notes;
};

/// The nine relation families of the ultra-relativistic algebra.
AlgebraSpec ultrarelativistic_table();
/// Same families with rotations replaced by spin-coupled J_ij at d = 2.
AlgebraSpec ultrarelativistic_spin_table(const ScalarValue& spin_coefficient);
/// Galilean-type table including the boost brackets computed by hand.
AlgebraSpec nonrelativistic_table();
/// Poincare algebra in the eta = diag(-1, 1, 1, 1) convention.
AlgebraSpec poincare_table();
AlgebraSpec table_for(Regime r, const ScalarValue& spin_coefficient);

/// {name?, pairs: [{left, right, expected, family?}]}, expected in the
/// operator text grammar at dimension `dim`.
AlgebraSpec algebra_spec_from_json(const nlohmann::json& j, int dim = 1);

struct BracketCheck {
  std::string family;
  std::string left;
  std::string right;
  OperatorExpr computed;
  OperatorExpr expected;
  OperatorExpr difference;
  bool passed() const { return difference.is_zero(); }
  std::string pair_name() const { return "[" + left + ", " + right + "]"; }
};

struct FamilySummary {
  int instances = 0;
  int failures = 0;
};

struct VerificationReport {
  std::string regime;
  std::string table;
  /// Sorted by (left, right).
  std::vector<BracketCheck> checks;
  std::map<std::string, FamilySummary> families;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;

  bool passed() const;
  int failures() const;
};

using ScalarBindings = std::map<std::string, ScalarValue, std::less<>>;

/// Throws UnknownGenerator if a relation names a generator not in `gens`.
/// Bindings are applied to the table, the generators and the expected
/// brackets before commuting; a table that becomes abelian adds a warning.
VerificationReport verify_algebra(const GeneratorSet& gens, const AlgebraSpec& spec,
                                  const ScalarBindings& bindings = {});

nlohmann::json to_json(const VerificationReport& r);
std::string to_text(const VerificationReport& r);
std::string to_latex(const VerificationReport& r);

}  // namespace hwalg
