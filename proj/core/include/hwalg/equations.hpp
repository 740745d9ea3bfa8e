#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hwalg/casimir.hpp"
#include "hwalg/generators.hpp"

namespace hwalg {

/// Named operator identity produced alongside a derivation, e.g. a broken
/// symmetry or a side condition. `value` is the left side minus the right.
struct NamedResidual {
  std::string name;
  OperatorExpr value;
  std::string note;
};

/// A solved central operator and everything needed to audit it.
struct DerivedEquation {
  std::string regime;
  /// Solved operator, identity term dropped; the equation is op |psi> = 0.
  OperatorExpr op;
  /// Conventional written form of the same equation, when one exists.
  std::optional<OperatorExpr> reference;
  /// Generators op must commute with.
  std::vector<NamedOperator> constraints;
  std::vector<NamedResidual> residuals;
  /// Remaining nullspace directions when the solve is not one-dimensional.
  std::vector<OperatorExpr> family;
  std::size_t nullspace_dimension = 0;
  /// Solved couplings and ratios by name.
  std::map<std::string, ScalarValue> parameters;
  /// Descriptive provenance labels.
  std::vector<std::string> references;
  /// Where the solve disagrees with the conventional form, and why.
  std::vector<std::string> ledger_notes;
};

/// Names of constraints whose bracket with op is not zero, recomputed from
/// scratch (independent of the solver).
std::vector<std::string> soundness_failures(const DerivedEquation& eq);
inline bool is_sound(const DerivedEquation& eq) { return soundness_failures(eq).empty(); }

/// Presets: kg, dirac, schrodinger, pauli, carroll, carroll-spin,
/// carroll-spin-pauli. `order` is the momentum degree for kg (default 2)
/// and dirac (default 1); 0 selects the default, other presets ignore it.
/// Throws UnknownRegime.
DerivedEquation emit_equation(std::string_view regime, int order = 0);
std::vector<std::string> equation_presets();

/// Coefficient ratio coeff(numerator word) / coeff(denominator word) on the
/// identity basis element; nullopt unless the denominator is a unit.
std::optional<ScalarValue> coefficient_ratio(const OperatorExpr& op, const Word& numerator,
                                             const Word& denominator);

/// Minimal-coupling transform built from boosts.
struct GaugeOptions {
  /// phi_1..phi_3; defaults to the registered symbols.
  std::array<ScalarValue, 3> potentials{sym::phi(1), sym::phi(2), sym::phi(3)};
  /// q for the Galilean transform, Q for the ultra-boost one; defaults apply
  /// when unset.
  std::optional<ScalarValue> charge;
  /// +1 selects the weight whose first-order term is p_i - (charge) phi_i ...;
  /// -1 the inverse direction.
  int sign = +1;
  int max_depth = kDefaultAdjointDepth;
};

struct AxisTransform {
  int axis = 0;
  /// D_i = weight_i * B_i.
  OperatorExpr generator;
  AdjointSeries momentum;
  AdjointSeries position;
};

struct GaugeResult {
  DerivedEquation equation;
  std::vector<AxisTransform> axes;
  int max_order = 0;
  bool positions_invariant = true;
  /// [Ad(p_i), Ad(x_j)] == [p_i, x_j] for every i, j under each D_k.
  bool commutators_preserved = true;
};

/// regime is "pauli" (Galilean boosts on the Schroedinger solve at d = 2)
/// or "carroll-spin-pauli" (ultra-boosts on the carroll-spin solve).
/// Throws UnknownRegime or NonNilpotentError.
GaugeResult gauge_transform(std::string_view regime, const GaugeOptions& options = {});

nlohmann::json to_json(const DerivedEquation& eq);
nlohmann::json to_json(const CouplingReport& r);
std::string to_text(const DerivedEquation& eq);
std::string to_latex(const DerivedEquation& eq);

}  // namespace hwalg
