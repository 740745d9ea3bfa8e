// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails. Tolerances are pinned here and never read from flags.

#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include "checks.hpp"
#include "hwalg/casimir.hpp"
#include "hwalg/equations.hpp"
#include "hwalg/generators.hpp"
#include "hwalg/matrix.hpp"
#include "hwalg/numeric.hpp"

namespace {

using namespace hwalg;

constexpr double kKernelResidualBound = 1e-6;
constexpr double kKernelTargetOrder = 4.0;
constexpr double kKernelSlopeFraction = 0.15;
constexpr double kDispersionResidualBound = 1e-12;
constexpr double kRatioUlps = 4.0;
constexpr int kOracleInstances = 200;
constexpr int kOracleMaxDegree = 6;
constexpr int kPropertyInstances = 200;

int failures = 0;

void report(int criterion, bool ok, const std::string& title, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", criterion, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void bracket_tables() {
  const auto report_ur = verify_algebra(ultrarelativistic_generators(), ultrarelativistic_table());
  bool ok = report_ur.families.size() == 9;
  std::ostringstream d;
  d << report_ur.families.size() << " families";
  int total = 0;
  for (const auto& [name, summary] : report_ur.families) {
    total += summary.instances;
    if (summary.instances < 3 || summary.instances > 81 || summary.failures != 0) {
      ok = false;
      d << "; " << name << " " << summary.instances << " instances, " << summary.failures << " failures";
    }
  }
  for (const auto& check : report_ur.checks) ok = ok && check.difference.is_zero();
  d << ", " << total << " brackets, all differences empty: " << (report_ur.passed() ? "yes" : "no");
  report(1, ok, "ultra-relativistic bracket table", d.str());
}

void clifford_su2() {
  int pairs = 0, pair_failures = 0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      ++pairs;
      const auto expected = MatrixValue::scalar(4, ScalarValue(2 * eta(mu, nu)));
      if (!(anticommutator(gamma(mu), gamma(nu)) == expected)) ++pair_failures;
    }
  }
  int triples = 0, triple_failures = 0;
  const ScalarValue two_i = ScalarValue(2) * ScalarValue::imag();
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      for (int k = 1; k <= 3; ++k) {
        ++triples;
        // Each triple checks the k-component of [s_i, s_j] in the Pauli basis.
        const auto parts = commutator(pauli(i), pauli(j)).decompose();
        if (!(parts[k] == two_i * ScalarValue(levi_civita(i, j, k)))) ++triple_failures;
        if (!parts[0].is_zero()) ++triple_failures;
      }
    }
  }
  std::ostringstream d;
  d << pairs - pair_failures << "/" << pairs << " gamma pairs, " << triples - triple_failures << "/" << triples
    << " Pauli triples";
  report(2, pairs == 16 && triples == 27 && pair_failures == 0 && triple_failures == 0,
         "Clifford and su(2) relations", d.str());
}

void derivation_soundness() {
  bool ok = true;
  std::ostringstream d;
  for (const auto& preset : equation_presets()) {
    const auto eq = emit_equation(preset);
    const bool sound = is_sound(eq) && eq.nullspace_dimension == 1;
    if (!sound) {
      ok = false;
      d << preset << " unsound (nullspace " << eq.nullspace_dimension << "); ";
    }
  }
  d << equation_presets().size() << " presets commute with their constraints";
  const auto schr = emit_equation("schrodinger");
  const Word h = Word::of(p_letter(0)), p11 = Word::of(p_letter(1), 2);
  const auto ratio = coefficient_ratio(schr.op, h, p11);
  // Divide out the c carried by H = c p0 so the ratio is per H.
  const ScalarValue per_h = ratio ? *ratio * sym::c(-1) : ScalarValue();
  const ScalarValue expected = ScalarValue(-2) * sym::a_nr();
  const bool ratio_ok = ratio && per_h == expected;
  d << "; Schrodinger H/p1^2 ratio " << (ratio ? per_h.to_string() : std::string("undefined")) << ", expected "
    << expected.to_string();
  if (!ratio_ok) d << " (the Galilean boost 2a t p + x forces p^2 + H/a)";
  report(3, ok && ratio_ok, "derivation soundness", d.str());
}

void dirac_klein_gordon() {
  const auto eq = emit_equation("dirac");
  OperatorExpr kg(4);
  for (int mu = 0; mu < 4; ++mu) kg += OperatorExpr::p(mu, 4) * OperatorExpr::p(mu, 4) * ScalarValue(eta(mu, mu));
  const auto diff = eq.op * eq.op - kg;
  report(4, diff.is_zero(), "Dirac squares to Klein-Gordon",
         diff.is_zero() ? "op^2 - eta p p I4 = 0" : "difference " + to_string(diff));
}

std::set<Word> support(const OperatorExpr& e) {
  std::set<Word> out;
  for (const auto& [w, m] : e.terms()) out.insert(w);
  return out;
}

// Degree of s in phi_axis, or -1 when s is not homogeneous in it.
int phi_degree(const ScalarValue& s, int axis) {
  const std::string name = "phi" + std::to_string(axis);
  const auto doubled = s.substitute({{name, ScalarValue(2) * sym::phi(axis)}});
  for (int k = 0; k <= 4; ++k) {
    if (doubled == s * ScalarValue(1 << k)) return k;
  }
  return -1;
}

void gauge_transforms() {
  std::ostringstream d;
  bool ok = true;

  const auto nr = gauge_transform("pauli");
  bool nr_shape = nr.max_order == 1;
  for (const auto& ax : nr.axes) {
    const Word pi = Word::of(p_letter(ax.axis));
    const auto shift = ax.momentum.value.coefficient(Word{}).at(0, 0);
    const ScalarValue magnitude = sym::q() * sym::c(-1) * sym::phi(ax.axis);
    nr_shape = nr_shape && support(ax.momentum.value) == std::set<Word>{Word{}, pi} &&
               ax.momentum.value.coefficient(pi).is_identity() && (shift == magnitude || shift == -magnitude);
  }
  d << "NR order " << nr.max_order << (nr_shape ? " support {p_i, phi_i} magnitude q/c" : " wrong shape")
    << ", commutators " << (nr.commutators_preserved ? "preserved" : "broken") << ", x_i "
    << (nr.positions_invariant ? "invariant" : "shifted");
  if (!nr.positions_invariant) {
    d << " by " << to_physics_string(nr.axes.front().position.value - OperatorExpr::x(nr.axes.front().axis, 2));
  }
  ok = ok && nr_shape && nr.commutators_preserved && nr.positions_invariant;

  const auto ur = gauge_transform("carroll-spin-pauli");
  bool ur_shape = ur.max_order == 2;
  ScalarValue second_order;
  for (const auto& ax : ur.axes) {
    const Word pi = Word::of(p_letter(ax.axis)), h = Word::of(p_letter(0));
    const auto& v = ax.momentum.value;
    ur_shape = ur_shape && support(v) == std::set<Word>{Word{}, h, pi} && v.coefficient(pi).is_identity() &&
               phi_degree(v.coefficient(h).at(0, 0), ax.axis) == 1 &&
               phi_degree(v.coefficient(Word{}).at(0, 0), ax.axis) == 2;
    if (ax.axis == 1) second_order = v.coefficient(Word{}).at(0, 0);
  }
  d << "; UR order " << ur.max_order << (ur_shape ? " support {p_i, phi_i H, phi_i^2}" : " wrong shape")
    << ", commutators " << (ur.commutators_preserved ? "preserved" : "broken") << ", x_i "
    << (ur.positions_invariant ? "invariant" : "shifted");
  ok = ok && ur_shape && ur.commutators_preserved && ur.positions_invariant;

  const ScalarValue reference =
      ScalarValue(Rational(1, 2)) * sym::c(2) * sym::v(-2) * sym::Q(2) * sym::a_ur() * sym::phi(1, 2);
  if (!(second_order == reference)) {
    d << "; UR phi_1^2 term " << second_order.to_string() << " vs reference " << reference.to_string();
  }
  report(5, ok, "gauge transforms", d.str());
}

void kernel() {
  KernelOptions o;
  o.stencil_order = 4;
  o.richardson_levels = 1;
  o.tolerance = kKernelResidualBound;
  o.slope_tolerance = kKernelSlopeFraction;
  const auto r = kernel_residual(o, {{"hbar", 1.0}, {"m", 1.0}, {"c", 1.0}});
  const bool slope_ok =
      r.convergence_slope &&
      std::abs(*r.convergence_slope - kKernelTargetOrder) <= kKernelSlopeFraction * kKernelTargetOrder;
  std::ostringstream d;
  d.precision(4);
  d << "max relative residual " << r.max_rel_residual << " (bound " << kKernelResidualBound << "), slope "
    << (r.convergence_slope ? *r.convergence_slope : std::nan(""));
  report(6, r.max_rel_residual <= kKernelResidualBound && slope_ok, "Carroll kernel", d.str());
}

double metric(const ResidualReport& r, const std::string& name) {
  for (const auto& [k, v] : r.metrics) {
    if (k == name) return v;
  }
  return std::nan("");
}

void dispersion() {
  const Bindings units{{"hbar", 1.0}, {"m", 1.0}, {"c", 1.0}};
  const double eps = std::numeric_limits<double>::epsilon();
  bool ok = true;
  double worst = 0.0, worst_ratio = 0.0;
  for (double k : {0.5, 1.0, 2.0, 4.0}) {
    const auto r = dispersion_check({0.0, 0.0, k}, units, kDispersionResidualBound);
    const double res = std::max(metric(r, "residual_plus"), metric(r, "residual_minus"));
    const double omega = metric(r, "omega");
    const double ratio = metric(r, "omega_ratio_4k");
    worst = std::max(worst, res);
    worst_ratio = std::max(worst_ratio, std::abs(ratio - 2.0));
    ok = ok && res <= kDispersionResidualBound && std::abs(ratio - 2.0) <= kRatioUlps * eps &&
         std::abs(omega - std::sqrt(2.0 * k)) <= kRatioUlps * eps * omega;
  }
  std::ostringstream d;
  d << "worst branch residual " << worst << ", worst |ratio - 2| " << worst_ratio;
  report(7, ok, "helicity dispersion", d.str());
}

void oracle_equivalence() {
  const auto o = hwtest::check_oracle_equivalence(20240611, kOracleInstances, kOracleMaxDegree);
  std::ostringstream d;
  d << o.instances << " expressions, " << o.failures << " disagreements";
  if (!o.ok()) d << "; first: " << o.first_failure;
  report(8, o.ok() && o.instances >= kOracleInstances, "oracle equivalence", d.str());
}

void properties() {
  bool ok = true;
  std::ostringstream d;
  for (const auto& o : {hwtest::check_jacobi(11, kPropertyInstances), hwtest::check_leibniz(12, kPropertyInstances),
                        hwtest::check_bilinearity(13, kPropertyInstances),
                        hwtest::check_idempotence(14, kPropertyInstances)}) {
    ok = ok && o.ok() && o.instances >= kPropertyInstances;
    d << o.name << " " << o.instances - o.failures << "/" << o.instances << "; ";
    if (!o.ok()) d << "first failure: " << o.first_failure << "; ";
  }
  std::string text = d.str();
  text.resize(text.size() - 2);
  report(9, ok, "property suites", text);
}

}  // namespace

int main() {
  bracket_tables();
  clifford_su2();
  derivation_soundness();
  dirac_klein_gordon();
  gauge_transforms();
  kernel();
  dispersion();
  oracle_equivalence();
  properties();
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
