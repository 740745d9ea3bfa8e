#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hwalg/casimir.hpp"
#include "hwalg/equations.hpp"
#include "hwalg/errors.hpp"
#include "hwalg/generators.hpp"
#include "hwalg/numeric.hpp"

namespace hwalg::cli {

namespace {

struct Config {
  std::string format;
  std::vector<std::string> sets;

  std::string regime;
  std::string table_file;
  int order = 0;

  std::string check_case;
  std::string k = "0,0,1";
  KernelOptions kernel;
  std::optional<double> tolerance;
  std::string csv;
};

std::pair<std::string, std::string> split_binding(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    throw std::invalid_argument("binding '" + text + "' is not name=value");
  }
  std::string name = text.substr(0, eq);
  ScalarValue::symbol(name);  // rejects unknown names
  return {name, text.substr(eq + 1)};
}

ScalarBindings exact_bindings(const std::vector<std::string>& sets) {
  ScalarBindings out;
  for (const auto& s : sets) {
    auto [name, value] = split_binding(s);
    out[name] = ScalarValue(Rational::parse(value));
  }
  return out;
}

Bindings float_bindings(const std::vector<std::string>& sets, Bindings defaults) {
  for (const auto& s : sets) {
    auto [name, value] = split_binding(s);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size()) {
      // Exact fractions are accepted as well.
      v = Rational::parse(value).to_double();
    }
    defaults[name] = v;
  }
  return defaults;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 3) throw std::invalid_argument("--k needs three comma-separated components");
  return parts;
}

std::string latex_table(const ResidualReport& r) {
  std::ostringstream s;
  s.precision(10);
  s << "\\begin{tabular}{ll}\n";
  s << "case & " << r.case_name << " \\\\\n";
  s << "passed & " << (r.passed ? "yes" : "no") << " \\\\\n";
  s << "max relative residual & " << r.max_rel_residual << " \\\\\n";
  if (r.convergence_slope) s << "convergence slope & " << *r.convergence_slope << " \\\\\n";
  for (const auto& [k, v] : r.metrics) s << "\\verb|" << k << "| & " << v << " \\\\\n";
  s << "\\end{tabular}\n";
  return s.str();
}

void emit(std::ostream& out, const std::string& format, const nlohmann::json& json,
          const std::string& text, const std::string& latex) {
  if (format == "json") {
    out << json.dump(2) << '\n';
  } else if (format == "latex") {
    out << latex;
  } else {
    out << text;
  }
}

int verify_algebra_cmd(const Config& cfg, std::ostream& out, std::ostream& err) {
  const Regime regime = parse_regime(cfg.regime);
  const ScalarValue e = solve_matrix_coupling().solved.value.value_or(ScalarValue());
  const GeneratorSet gens = generators_for(regime, e);
  AlgebraSpec spec;
  if (cfg.table_file.empty()) {
    spec = table_for(regime, e);
  } else {
    std::ifstream in(cfg.table_file);
    if (!in) throw std::invalid_argument("cannot read table file '" + cfg.table_file + "'");
    spec = algebra_spec_from_json(nlohmann::json::parse(in), gens.dim);
  }
  const VerificationReport rep = verify_algebra(gens, spec, exact_bindings(cfg.sets));
  for (const auto& w : rep.warnings) err << "warning: " << w << '\n';
  emit(out, cfg.format, to_json(rep), to_text(rep), to_latex(rep));
  return rep.passed() ? kPass : kFailure;
}

int derive_cmd(const Config& cfg, std::ostream& out, std::ostream& err) {
  const DerivedEquation eq = emit_equation(cfg.regime, cfg.order);
  emit(out, cfg.format, to_json(eq), to_text(eq), to_latex(eq));
  const auto failures = soundness_failures(eq);
  for (const auto& f : failures) err << "error: operator does not commute with " << f << '\n';
  return failures.empty() ? kPass : kFailure;
}

nlohmann::json series_json(const AdjointSeries& s) {
  nlohmann::json nested = nlohmann::json::array();
  for (const auto& n : s.nested) nested.push_back(to_physics_string(n));
  return {{"order", s.order}, {"value", to_physics_string(s.value)}, {"nested", nested}};
}

int gauge_cmd(const Config& cfg, std::ostream& out, std::ostream&) {
  const GaugeResult g = gauge_transform(cfg.regime);
  nlohmann::json j;
  j["regime"] = cfg.regime;
  j["max_order"] = g.max_order;
  j["positions_invariant"] = g.positions_invariant;
  j["commutators_preserved"] = g.commutators_preserved;
  j["equation"] = to_physics_string(g.equation.op);
  nlohmann::json axes = nlohmann::json::array();
  std::ostringstream text;
  text << "gauge transform " << cfg.regime << ": order " << g.max_order << ", positions "
       << (g.positions_invariant ? "invariant" : "shifted") << ", commutators "
       << (g.commutators_preserved ? "preserved" : "broken") << '\n';
  std::ostringstream latex;
  for (const auto& a : g.axes) {
    axes.push_back({{"axis", a.axis},
                    {"generator", to_physics_string(a.generator)},
                    {"momentum", series_json(a.momentum)},
                    {"position", series_json(a.position)}});
    text << "  axis " << a.axis << ": p -> " << to_physics_string(a.momentum.value) << '\n'
         << "          x -> " << to_physics_string(a.position.value) << '\n';
    latex << "e^{D_" << a.axis << "} \\hat{p}_{" << a.axis << "} e^{-D_" << a.axis
          << "} = " << to_latex(a.momentum.value) << "\\\\\n";
  }
  j["axes"] = axes;
  text << "  equation: " << to_physics_string(g.equation.op) << '\n';
  latex << to_latex(g.equation.op) << " = 0\n";
  emit(out, cfg.format, j, text.str(), latex.str());
  return kPass;
}

int check_solution_cmd(const Config& cfg, std::ostream& out, std::ostream& err) {
  const Bindings defaults{{"c", 1.0}, {"hbar", 1.0}, {"m", 1.0}};
  ResidualReport rep;
  if (cfg.check_case == "kernel") {
    KernelOptions o = cfg.kernel;
    if (cfg.tolerance) o.tolerance = *cfg.tolerance;
    const Bindings b = float_bindings(cfg.sets, defaults);
    rep = kernel_residual(o, b);
    if (!cfg.csv.empty()) {
      GridSpec grid = *rep.grid;
      const double hbar = b.at("hbar").real(), m = b.at("m").real(), c = b.at("c").real();
      const SampledField phi = sample(grid, 1, [&](const std::vector<double>& pt) {
        return std::vector<complex>{carroll_kernel(pt[0], pt[1], hbar, m, c)};
      });
      std::ofstream csv(cfg.csv);
      if (!csv) throw std::invalid_argument("cannot write '" + cfg.csv + "'");
      write_csv(csv, grid, phi);
    }
  } else if (cfg.check_case == "dispersion" || cfg.check_case == "helicity") {
    const auto parts = split_commas(cfg.k);
    std::array<double, 3> k{};
    for (int i = 0; i < 3; ++i) k[i] = std::stod(parts[i]);
    const double tol = cfg.tolerance.value_or(1e-12);
    rep = cfg.check_case == "dispersion" ? dispersion_check(k, float_bindings(cfg.sets, defaults), tol)
                                         : helicity_check(k, tol);
  } else if (cfg.check_case == "schrodinger") {
    const auto parts = split_commas(cfg.k);
    std::array<Rational, 3> k{};
    for (int i = 0; i < 3; ++i) k[i] = Rational::parse(parts[i]);
    rep = schrodinger_check(k, float_bindings(cfg.sets, {{"hbar", 1.0}, {"aNR", 1.0}}));
  } else {
    throw std::invalid_argument("unknown case '" + cfg.check_case + "'");
  }
  emit(out, cfg.format, to_json(rep), to_text(rep), latex_table(rep));
  if (!rep.passed) err << "error: " << rep.case_name << " residuals exceed tolerance\n";
  return rep.passed ? kPass : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  const char* env = std::getenv("HWALG_FORMAT");
  cfg.format = env != nullptr ? env : "text";

  CLI::App app{"Symbolic Heisenberg-Weyl operator engine", "hwalg"};
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"json", "text", "latex"});
  app.add_option("--format", cfg.format, "Output format (default: $HWALG_FORMAT or text)")
      ->check(formats);

  auto* verify = app.add_subcommand("verify-algebra", "Check a generator bracket table exactly");
  verify->add_option("--regime", cfg.regime, "rel | nr | ur | ur-spin")->required();
  verify->add_option("--table", cfg.table_file, "JSON table {pairs: [{left, right, expected}]}");
  verify->add_option("--set", cfg.sets, "Bind a parameter: name=rational");
  verify->add_option("--format", cfg.format)->check(formats);

  auto* derive = app.add_subcommand("derive", "Solve for the central operator of a preset");
  derive->add_option("--regime", cfg.regime,
                     "kg | dirac | schrodinger | pauli | carroll | carroll-spin | carroll-spin-pauli")
      ->required();
  derive->add_option("--order", cfg.order, "Momentum degree for kg and dirac")->check(CLI::Range(0, 6));
  derive->add_option("--format", cfg.format)->check(formats);

  auto* gauge = app.add_subcommand("gauge", "Expand the boost-generated minimal-coupling transform");
  gauge->add_option("--regime", cfg.regime, "pauli | carroll-spin-pauli")->required();
  gauge->add_option("--format", cfg.format)->check(formats);

  auto* check = app.add_subcommand("check-solution", "Numeric and closed-form solution checks");
  check->add_option("--case", cfg.check_case, "kernel | dispersion | schrodinger | helicity")
      ->required()
      ->check(CLI::IsMember({"kernel", "dispersion", "schrodinger", "helicity"}));
  check->add_option("--k", cfg.k, "Wavevector k1,k2,k3");
  check->add_option("--xmin", cfg.kernel.xmin);
  check->add_option("--xmax", cfg.kernel.xmax);
  check->add_option("--tmin", cfg.kernel.tmin);
  check->add_option("--tmax", cfg.kernel.tmax);
  check->add_option("--points", cfg.kernel.points, "Points per axis")->check(CLI::Range(8, 100000));
  check->add_option("--stencil-order", cfg.kernel.stencil_order)->check(CLI::IsMember({2, 4}));
  check->add_option("--richardson", cfg.kernel.richardson_levels)->check(CLI::Range(0, 4));
  check->add_option("--tolerance", cfg.tolerance);
  check->add_option("--csv", cfg.csv, "Write the sampled kernel as CSV");
  check->add_option("--set", cfg.sets, "Bind a parameter: name=number");
  check->add_option("--format", cfg.format)->check(formats);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*verify) return verify_algebra_cmd(cfg, out, err);
    if (*derive) return derive_cmd(cfg, out, err);
    if (*gauge) return gauge_cmd(cfg, out, err);
    return check_solution_cmd(cfg, out, err);
  } catch (const NonNilpotentError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::invalid_argument& e) {
    // Unknown regime, bad grid, malformed binding or table.
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    // Unbound parameter or unknown generator.
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace hwalg::cli
