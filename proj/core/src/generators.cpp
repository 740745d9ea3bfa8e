#include "hwalg/generators.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hwalg/errors.hpp"

namespace hwalg {

namespace {

void check_spatial(int i) {
  if (i < 1 || i > 3) throw std::out_of_range("spatial index must be 1..3");
}

void check_spacetime(int mu) {
  if (mu < 0 || mu > 3) throw std::out_of_range("spacetime index must be 0..3");
}

int delta(int i, int j) { return i == j ? 1 : 0; }

std::string idx(const std::string& stem, int i) { return stem + std::to_string(i); }
std::string idx(const std::string& stem, int i, int j) {
  return stem + std::to_string(i) + std::to_string(j);
}

ScalarValue i_hbar() { return sym::i() * sym::hbar(); }

// 2 aUR v^2 / c^2, the ultra-boost weight.
ScalarValue ur_weight() { return ScalarValue(2) * sym::a_ur() * sym::v(2) * sym::c(-2); }


void add(AlgebraSpec& spec, std::string family, std::string l, std::string r, OperatorExpr e) {
  spec.relations.push_back({std::move(family), std::move(l), std::move(r), std::move(e)});
}

// Families shared by the nonrelativistic and ultrarelativistic tables.
void spatial_core(AlgebraSpec& spec, const GeneratorSet& g, const std::string& rot) {
  const int d = g.dim;
  const OperatorExpr zero(d);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) add(spec, "P/P", idx("p", i), idx("p", j), zero);
  }
  for (int i = 1; i <= 3; ++i) add(spec, "P/H", idx("p", i), "H", zero);
  for (int k = 1; k <= 3; ++k) {
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) {
        OperatorExpr e = (g.at(idx("p", i)) * ScalarValue(delta(j, k)) -
                          g.at(idx("p", j)) * ScalarValue(delta(i, k))) *
                         i_hbar();
        add(spec, "P/" + rot, idx("p", k), idx(rot, i, j), e);
      }
    }
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      for (int k = 1; k <= 3; ++k) {
        for (int h = 1; h <= 3; ++h) {
          OperatorExpr e = g.at(idx(rot, j, h)) * ScalarValue(delta(i, k)) -
                           g.at(idx(rot, j, k)) * ScalarValue(delta(i, h)) -
                           g.at(idx(rot, i, h)) * ScalarValue(delta(j, k)) +
                           g.at(idx(rot, i, k)) * ScalarValue(delta(j, h));
          add(spec, rot + "/" + rot, idx(rot, i, j), idx(rot, k, h), e * i_hbar());
        }
      }
    }
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) add(spec, rot + "/H", idx(rot, i, j), "H", zero);
  }
}

void ultrarelativistic_boosts(AlgebraSpec& spec, const GeneratorSet& g, const std::string& rot) {
  const int d = g.dim;
  const OperatorExpr H = OperatorExpr::H(d);
  const ScalarValue k = ScalarValue(-1) * i_hbar() * ur_weight();
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      for (int kk = 1; kk <= 3; ++kk) {
        OperatorExpr e = (OperatorExpr::x(i, d) * ScalarValue(delta(j, kk)) -
                          OperatorExpr::x(j, d) * ScalarValue(delta(i, kk))) *
                         H * k;
        add(spec, rot + "/BUR", idx(rot, i, j), idx("BUR", kk), e);
      }
    }
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      add(spec, "BUR/P", idx("BUR", i), idx("p", j),
          H * (i_hbar() * ur_weight() * ScalarValue(delta(i, j))));
    }
  }
  for (int i = 1; i <= 3; ++i) {
    add(spec, "BUR/H", idx("BUR", i), "H", OperatorExpr::scalar(-i_hbar(), d));
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      add(spec, "BUR/BUR", idx("BUR", i), idx("BUR", j),
          (OperatorExpr::x(i, d) - OperatorExpr::x(j, d)) * (i_hbar() * ur_weight()));
    }
  }
  spec.notes.push_back(
      "aUR denotes the starred constant a*_UR (a_UR = v^2 a*_UR); every v^2 appears "
      "explicitly through the factor v^2/c^2");
  spec.notes.push_back(
      "[BUR_i, BUR_j] is proportional to x_i - x_j, which is not a combination of the named "
      "generators; the identity is checked, closure is not asserted");
}

void spatial_rotations(GeneratorSet& g, const ScalarValue* spin) {
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      if (spin) {
        OperatorExpr J = make_rotation(i, j, 2) + OperatorExpr::matrix(spin_coupling(i, j, *spin));
        g.generators.emplace(idx("J", i, j), std::move(J));
      } else {
        g.generators.emplace(idx("M", i, j), make_rotation(i, j, g.dim));
      }
    }
  }
}

void translations(GeneratorSet& g, int from) {
  for (int mu = from; mu <= 3; ++mu) g.generators.emplace(idx("p", mu), OperatorExpr::p(mu, g.dim));
  g.generators.emplace("H", OperatorExpr::H(g.dim));
  g.generators.emplace("D", make_dilation(g.dim));
}

}  // namespace

OperatorExpr make_rotation(int i, int j, int dim) {
  check_spacetime(i);
  check_spacetime(j);
  return OperatorExpr::x(i, dim) * OperatorExpr::p(j, dim) -
         OperatorExpr::x(j, dim) * OperatorExpr::p(i, dim);
}

OperatorExpr make_boost_nr(int i, int dim) {
  check_spatial(i);
  return OperatorExpr::t(dim) * OperatorExpr::p(i, dim) * (ScalarValue(2) * sym::a_nr()) +
         OperatorExpr::x(i, dim);
}

OperatorExpr make_boost_ur(int i, int dim) {
  check_spatial(i);
  return OperatorExpr::x(i, dim) * OperatorExpr::H(dim) * ur_weight() + OperatorExpr::t(dim);
}

OperatorExpr make_dilation(int dim) {
  OperatorExpr d(dim);
  for (int mu = 0; mu < 4; ++mu) d += OperatorExpr::x(mu, dim) * OperatorExpr::p(mu, dim);
  return d;
}

Regime parse_regime(std::string_view name) {
  if (name == "rel" || name == "relativistic") return Regime::relativistic;
  if (name == "nr" || name == "nonrelativistic") return Regime::nonrelativistic;
  if (name == "ur" || name == "ultrarelativistic") return Regime::ultrarelativistic;
  if (name == "ur-spin" || name == "ultrarelativistic-spin") return Regime::ultrarelativistic_spin;
  throw UnknownRegime(std::string(name));
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::relativistic:
      return "relativistic";
    case Regime::nonrelativistic:
      return "nonrelativistic";
    case Regime::ultrarelativistic:
      return "ultrarelativistic";
    case Regime::ultrarelativistic_spin:
      return "ultrarelativistic-spin";
  }
  return "unknown";
}

const OperatorExpr& GeneratorSet::at(const std::string& name) const {
  auto it = generators.find(name);
  if (it == generators.end()) throw UnknownGenerator(name);
  return it->second;
}

GeneratorSet relativistic_generators() {
  GeneratorSet g{Regime::relativistic, 1, {}};
  translations(g, 0);
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) g.generators.emplace(idx("M", mu, nu), make_rotation(mu, nu));
  }
  return g;
}

GeneratorSet nonrelativistic_generators() {
  GeneratorSet g{Regime::nonrelativistic, 1, {}};
  translations(g, 1);
  spatial_rotations(g, nullptr);
  for (int i = 1; i <= 3; ++i) g.generators.emplace(idx("BNR", i), make_boost_nr(i));
  return g;
}

GeneratorSet ultrarelativistic_generators() {
  GeneratorSet g{Regime::ultrarelativistic, 1, {}};
  translations(g, 1);
  spatial_rotations(g, nullptr);
  for (int i = 1; i <= 3; ++i) g.generators.emplace(idx("BUR", i), make_boost_ur(i));
  return g;
}

GeneratorSet ultrarelativistic_spin_generators(const ScalarValue& spin_coefficient) {
  GeneratorSet g{Regime::ultrarelativistic_spin, 2, {}};
  translations(g, 1);
  spatial_rotations(g, &spin_coefficient);
  for (int i = 1; i <= 3; ++i) g.generators.emplace(idx("BUR", i), make_boost_ur(i, 2));
  return g;
}

GeneratorSet generators_for(Regime r, const ScalarValue& spin_coefficient) {
  switch (r) {
    case Regime::relativistic:
      return relativistic_generators();
    case Regime::nonrelativistic:
      return nonrelativistic_generators();
    case Regime::ultrarelativistic:
      return ultrarelativistic_generators();
    case Regime::ultrarelativistic_spin:
      return ultrarelativistic_spin_generators(spin_coefficient);
  }
  throw UnknownRegime("?");
}

AlgebraSpec ultrarelativistic_table() {
  AlgebraSpec spec{"ultrarelativistic", {}, {}};
  GeneratorSet g = ultrarelativistic_generators();
  spatial_core(spec, g, "M");
  ultrarelativistic_boosts(spec, g, "M");
  return spec;
}

AlgebraSpec ultrarelativistic_spin_table(const ScalarValue& spin_coefficient) {
  AlgebraSpec spec{"ultrarelativistic-spin", {}, {}};
  GeneratorSet g = ultrarelativistic_spin_generators(spin_coefficient);
  spatial_core(spec, g, "J");
  ultrarelativistic_boosts(spec, g, "J");
  spec.notes.push_back("J_ij = M_ij I2 + e [sigma_i, sigma_j] with e = " +
                       spin_coefficient.to_string());
  return spec;
}

AlgebraSpec nonrelativistic_table() {
  AlgebraSpec spec{"nonrelativistic", {}, {}};
  GeneratorSet g = nonrelativistic_generators();
  spatial_core(spec, g, "M");
  const OperatorExpr zero(1);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      add(spec, "BNR/P", idx("BNR", i), idx("p", j),
          OperatorExpr::scalar(i_hbar() * ScalarValue(delta(i, j))));
    }
  }
  for (int i = 1; i <= 3; ++i) {
    add(spec, "BNR/H", idx("BNR", i), "H",
        g.at(idx("p", i)) * (ScalarValue(-2) * i_hbar() * sym::a_nr()));
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      for (int k = 1; k <= 3; ++k) {
        OperatorExpr e = (g.at(idx("BNR", i)) * ScalarValue(delta(j, k)) -
                          g.at(idx("BNR", j)) * ScalarValue(delta(i, k))) *
                         (-i_hbar());
        add(spec, "M/BNR", idx("M", i, j), idx("BNR", k), e);
      }
    }
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) add(spec, "BNR/BNR", idx("BNR", i), idx("BNR", j), zero);
  }
  spec.notes.push_back(
      "Galilean boost brackets: expected values derived by hand and cross-checked against the "
      "polynomial oracle");
  return spec;
}

AlgebraSpec poincare_table() {
  AlgebraSpec spec{"poincare", {}, {}};
  GeneratorSet g = relativistic_generators();
  const OperatorExpr zero(1);
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) add(spec, "P/P", idx("p", mu), idx("p", nu), zero);
  }
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      for (int rho = 0; rho < 4; ++rho) {
        OperatorExpr e = (g.at(idx("p", nu)) * ScalarValue(eta(mu, rho)) -
                          g.at(idx("p", mu)) * ScalarValue(eta(nu, rho))) *
                         i_hbar();
        add(spec, "M/P", idx("M", mu, nu), idx("p", rho), e);
      }
    }
  }
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      for (int rho = 0; rho < 4; ++rho) {
        for (int s = 0; s < 4; ++s) {
          OperatorExpr e = g.at(idx("M", nu, s)) * ScalarValue(eta(mu, rho)) -
                           g.at(idx("M", mu, s)) * ScalarValue(eta(nu, rho)) -
                           g.at(idx("M", nu, rho)) * ScalarValue(eta(mu, s)) +
                           g.at(idx("M", mu, rho)) * ScalarValue(eta(nu, s));
          add(spec, "M/M", idx("M", mu, nu), idx("M", rho, s), e * i_hbar());
        }
      }
    }
  }
  return spec;
}

AlgebraSpec table_for(Regime r, const ScalarValue& spin_coefficient) {
  switch (r) {
    case Regime::relativistic:
      return poincare_table();
    case Regime::nonrelativistic:
      return nonrelativistic_table();
    case Regime::ultrarelativistic:
      return ultrarelativistic_table();
    case Regime::ultrarelativistic_spin:
      return ultrarelativistic_spin_table(spin_coefficient);
  }
  throw UnknownRegime("?");
}

AlgebraSpec algebra_spec_from_json(const nlohmann::json& j, int dim) {
  AlgebraSpec spec;
  spec.name = j.value("name", std::string("custom"));
  for (const auto& p : j.at("pairs")) {
    spec.relations.push_back({p.value("family", std::string("custom")),
                              p.at("left").get<std::string>(), p.at("right").get<std::string>(),
                              parse_operator(p.at("expected").get<std::string>(), dim)});
  }
  if (j.contains("notes")) spec.notes = j.at("notes").get<std::vector<std::string>>();
  return spec;
}

bool VerificationReport::passed() const { return failures() == 0; }

int VerificationReport::failures() const {
  return static_cast<int>(
      std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed(); }));
}

VerificationReport verify_algebra(const GeneratorSet& gens, const AlgebraSpec& spec,
                                  const ScalarBindings& bindings) {
  VerificationReport report;
  report.regime = regime_name(gens.regime);
  report.table = spec.name;
  report.notes = spec.notes;

  TablePtr table = CommutationTable::minkowski();
  auto prepare = [&](const OperatorExpr& e) {
    return bindings.empty() ? e : e.substitute(bindings).with_table(table);
  };
  if (!bindings.empty()) {
    table = std::make_shared<const CommutationTable>(table->substitute(bindings));
    if (table->is_degenerate()) {
      report.warnings.push_back("degenerate table: every bracket vanishes identically");
    }
  }

  std::map<std::string, OperatorExpr> resolved;
  auto get = [&](const std::string& name) -> const OperatorExpr& {
    auto it = resolved.find(name);
    if (it == resolved.end()) it = resolved.emplace(name, prepare(gens.at(name))).first;
    return it->second;
  };

  for (const auto& rel : spec.relations) {
    OperatorExpr computed = commutator(get(rel.left), get(rel.right));
    OperatorExpr expected = prepare(rel.expected);
    OperatorExpr diff = computed - expected;
    auto& fam = report.families[rel.family];
    ++fam.instances;
    if (!diff.is_zero()) ++fam.failures;
    report.checks.push_back({rel.family, rel.left, rel.right, std::move(computed),
                             std::move(expected), std::move(diff)});
  }
  std::stable_sort(report.checks.begin(), report.checks.end(), [](const auto& a, const auto& b) {
    return std::tie(a.left, a.right) < std::tie(b.left, b.right);
  });
  return report;
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"family", c.family},
                      {"left", c.left},
                      {"right", c.right},
                      {"passed", c.passed()},
                      {"computed", to_string(c.computed)},
                      {"expected", to_string(c.expected)},
                      {"difference", to_string(c.difference)}});
  }
  nlohmann::json families = nlohmann::json::object();
  for (const auto& [name, f] : r.families) {
    families[name] = {{"instances", f.instances}, {"failures", f.failures}};
  }
  return {{"regime", r.regime},     {"table", r.table},       {"passed", r.passed()},
          {"failures", r.failures()}, {"families", families}, {"checks", checks},
          {"notes", r.notes},       {"warnings", r.warnings}};
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream out;
  out << "regime: " << r.regime << "   table: " << r.table << "\n\n";
  std::size_t width = 0;
  for (const auto& c : r.checks) width = std::max(width, c.pair_name().size());
  for (const auto& c : r.checks) {
    out << (c.passed() ? "ok    " : "FAIL  ") << c.pair_name()
        << std::string(width - c.pair_name().size() + 2, ' ') << "= "
        << to_physics_string(c.expected);
    if (!c.passed()) out << "   (difference " << to_physics_string(c.difference) << ")";
    out << "\n";
  }
  out << "\nfamilies:\n";
  for (const auto& [name, f] : r.families) {
    out << "  " << name << ": " << f.instances - f.failures << "/" << f.instances << "\n";
  }
  out << (r.passed() ? "PASS" : "FAIL") << " (" << r.checks.size() << " brackets, "
      << r.failures() << " failures)\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  return out.str();
}

std::string to_latex(const VerificationReport& r) {
  std::ostringstream out;
  out << "\\begin{tabular}{lll}\n";
  for (const auto& c : r.checks) {
    out << "$[" << c.left << ", " << c.right << "]$ & $" << to_latex(c.expected) << "$ & "
        << (c.passed() ? "ok" : "fail") << " \\\\\n";
  }
  out << "\\end{tabular}\n";
  return out.str();
}

}  // namespace hwalg
