#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "hwalg/casimir.hpp"
#include "hwalg/errors.hpp"
#include "hwalg/numeric.hpp"

namespace hwalg {
namespace {

const Bindings kUnits{{"hbar", 1.0}, {"m", 1.0}, {"c", 1.0}};
constexpr complex kI{0.0, 1.0};

GridSpec line(int coordinate, double lo, double hi, int points) {
  GridSpec g;
  g.axes = {{coordinate, lo, hi, points}};
  return g;
}

// Largest |f - g| / |g| over the valid points of f.
double max_rel_error(const SampledField& f, const SampledField& g) {
  double worst = 0.0;
  for_each_valid(f, [&](std::size_t n) {
    for (int c = 0; c < f.dim(); ++c) {
      worst = std::max(worst, std::abs(f.components[c][n] - g.components[c][n]) /
                                  std::max(std::abs(g.components[c][n]), 1e-300));
    }
  });
  return worst;
}

TEST(ApplyOperatorTest, MomentumOnPlaneWave) {
  const double k = 1.7, hbar = 0.8;
  const GridSpec g = line(1, 0.0, 2.0, 401);
  const auto f = sample(g, 1, [&](const auto& x) { return std::vector<complex>{std::exp(kI * k * x[0])}; });
  const auto pf = apply_operator(OperatorExpr::p(1), f, g, {{"hbar", hbar}});
  auto expected = f;
  for (auto& v : expected.components[0]) v *= hbar * k;
  EXPECT_LE(max_rel_error(pf, expected), 1e-8);
}

TEST(ApplyOperatorTest, EnergySquaredOnTemporalWave) {
  const double w = 2.3, c = 3.0;
  const GridSpec g = line(0, -1.0, 1.0, 401);
  const auto f = sample(g, 1, [&](const auto& t) { return std::vector<complex>{std::exp(-kI * w * t[0])}; });
  const auto h2 = OperatorExpr::H() * OperatorExpr::H();
  const auto out = apply_operator(h2, f, g, {{"hbar", 1.0}, {"c", c}});
  auto expected = f;
  for (auto& v : expected.components[0]) v *= w * w;
  EXPECT_LE(max_rel_error(out, expected), 1e-8);
}

TEST(ApplyOperatorTest, CanonicalCommutatorActsAsIHbar) {
  GridSpec g = line(1, -1.0, 1.0, 201);
  const auto f = sample(g, 1, [](const auto& x) {
    return std::vector<complex>{std::exp(-x[0] * x[0]) * std::cos(3.0 * x[0])};
  });
  const auto xp = OperatorExpr::x(1) * OperatorExpr::p(1);
  // Built by hand so the engine's own normal ordering is not used.
  const auto px_applied = apply_operator(OperatorExpr::p(1), apply_operator(OperatorExpr::x(1), f, g, kUnits), g, kUnits);
  const auto xp_applied = apply_operator(xp, f, g, kUnits);
  double worst = 0.0;
  for_each_valid(px_applied, [&](std::size_t n) {
    worst = std::max(worst, std::abs(xp_applied.components[0][n] - px_applied.components[0][n] - kI * f.components[0][n]));
  });
  EXPECT_LE(worst, 1e-8);
}

TEST(ApplyOperatorTest, SpinorGridMatchesClosedFormSubstitution) {
  const std::array<double, 3> k{0.4, -0.3, 0.9};
  const double w = 1.1;
  GridSpec g;
  g.axes = {{0, 0.0, 1.0, 21}, {1, 0.0, 1.0, 21}, {2, 0.0, 1.0, 21}, {3, 0.0, 1.0, 21}};
  const std::array<complex, 2> u{complex(0.6, 0.0), complex(0.0, 0.8)};
  const auto f = sample(g, 2, [&](const auto& pt) {
    const complex phase = std::exp(kI * (k[0] * pt[1] + k[1] * pt[2] + k[2] * pt[3] - w * pt[0]));
    return std::vector<complex>{u[0] * phase, u[1] * phase};
  });
  Bindings b = kUnits;
  b["aUR"] = -0.25;
  const auto op = pauli_momentum() - OperatorExpr::H(2) * OperatorExpr::H(2) * (ScalarValue(2) * sym::a_ur());
  const auto grid_result = apply_operator(op, f, g, b);
  const auto m = substitute_momenta(op, {w, k[0], k[1], k[2]}, b);
  double worst = 0.0;
  for_each_valid(grid_result, [&](std::size_t n) {
    for (int r = 0; r < 2; ++r) {
      const complex closed = (m[r][0] * u[0] + m[r][1] * u[1]) * (f.components[0][n] / u[0]);
      worst = std::max(worst, std::abs(grid_result.components[r][n] - closed) / std::abs(closed));
    }
  });
  EXPECT_LE(worst, 1e-7);
}

TEST(ApplyOperatorTest, Errors) {
  const GridSpec g = line(1, 0.0, 1.0, 16);
  const auto f = sample(g, 1, [](const auto&) { return std::vector<complex>{1.0}; });
  EXPECT_THROW(apply_operator(OperatorExpr::p(1), f, g, {}), UnboundSymbol);
  EXPECT_THROW(apply_operator(OperatorExpr::p(2), f, g, kUnits), GridError);
  EXPECT_THROW(apply_operator(OperatorExpr::p(1) * OperatorExpr::p(1) * OperatorExpr::p(1) * OperatorExpr::p(1),
                              f, g, kUnits),
               GridError);
  EXPECT_THROW(line(1, 0.0, 1.0, 7).validate(), GridError);
  GridSpec singular = line(1, -1.0, 1.0, 16);
  singular.exclusions = {{1, 0.0}};
  EXPECT_THROW(singular.validate(), GridError);
  GridSpec bad_order = g;
  bad_order.stencil_order = 3;
  EXPECT_THROW(bad_order.validate(), GridError);
}

TEST(ApplyOperatorTest, SecondOrderStencilConvergesQuadratically) {
  std::vector<double> errors;
  for (int points : {51, 101, 201}) {
    GridSpec g = line(1, 0.0, 2.0, points);
    g.stencil_order = 2;
    g.richardson_levels = 0;
    const auto f = sample(g, 1, [](const auto& x) { return std::vector<complex>{std::sin(x[0])}; });
    const auto df = apply_operator(OperatorExpr::p(1), f, g, kUnits);
    double worst = 0.0;
    for_each_valid(df, [&](std::size_t n) {
      const double x = g.axes[0].at(static_cast<int>(n));
      if (x < 0.5 || x > 1.5) return;
      worst = std::max(worst, std::abs(df.components[0][n] - (-kI) * std::cos(x)));
    });
    errors.push_back(worst);
  }
  EXPECT_NEAR(std::log2(errors[0] / errors[1]), 2.0, 0.3);
  EXPECT_NEAR(std::log2(errors[1] / errors[2]), 2.0, 0.3);
}

TEST(KernelTest, ResidualAndConvergence) {
  const auto r = kernel_residual({}, kUnits);
  EXPECT_TRUE(r.passed) << to_text(r);
  EXPECT_LE(r.max_rel_residual, 1e-6);
  ASSERT_TRUE(r.convergence_slope);
  EXPECT_NEAR(*r.convergence_slope, 4.0, 0.6);
}

TEST(KernelTest, SingularGridIsRejected) {
  KernelOptions o;
  o.xmin = -1.0;
  o.xmax = 1.0;
  EXPECT_THROW(kernel_residual(o, kUnits), GridError);
  EXPECT_THROW(kernel_residual({}, {{"hbar", 1.0}}), UnboundSymbol);
}

TEST(KernelTest, PrincipalBranchAndDuality) {
  // sqrt(1/i) = exp(-i pi/4).
  const complex at_origin = carroll_kernel(1.0, 0.0, 1.0, 2.0 * std::numbers::pi, 1.0);
  EXPECT_NEAR(at_origin.real(), std::cos(-std::numbers::pi / 4), 1e-15);
  EXPECT_NEAR(at_origin.imag(), std::sin(-std::numbers::pi / 4), 1e-15);
  EXPECT_LE(duality_probe(1.0, 1.0, 1.0), 1e-12);
  EXPECT_LE(duality_probe(0.7, 1.3, 2.5), 1e-12);
}

TEST(DispersionTest, BranchesAreAnnihilated) {
  for (double k : {0.5, 1.0, 2.0, 4.0}) {
    const auto r = dispersion_check({0.0, 0.0, k}, kUnits);
    EXPECT_TRUE(r.passed) << to_text(r);
  }
  const auto pair = plane_wave_pair({0.0, 0.0, 2.0}, kUnits);
  EXPECT_DOUBLE_EQ(pair.first.omega, 2.0);
  EXPECT_THROW(dispersion_check({0.0, 0.0, 0.0}, kUnits), std::invalid_argument);
}

TEST(DispersionTest, GenericDirectionsAndBindings) {
  const Bindings b{{"hbar", 0.5}, {"m", 2.0}, {"c", 1.5}};
  for (const auto& k : std::vector<std::array<double, 3>>{{0.3, -1.2, 0.7}, {-2.0, 0.1, 0.0}, {0.0, 1.0, -1.0}}) {
    const auto r = dispersion_check(k, b);
    EXPECT_TRUE(r.passed) << to_text(r);
  }
}

TEST(HelicityTest, SpinorsAreOrthonormalEigenvectors) {
  const auto up = helicity_spinor({0.0, 0.0, 3.0}, -1);
  EXPECT_EQ(up[0], complex(0.0));
  EXPECT_EQ(up[1], complex(1.0));
  for (const auto& k : std::vector<std::array<double, 3>>{{1.0, 2.0, -0.5}, {0.0, 0.0, -2.0}, {1e-9, 0.0, 1.0}}) {
    const auto r = helicity_check(k);
    EXPECT_TRUE(r.passed) << to_text(r);
  }
}

TEST(SchrodingerCheckTest, ExactResidualVanishes) {
  const auto r = schrodinger_check({Rational(1), Rational(0), Rational(0)}, {{"hbar", 1.0}, {"aNR", 1.0}});
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.max_rel_residual, 0.0);
  const auto j = to_json(r);
  EXPECT_DOUBLE_EQ(j["metrics"]["omega"].get<double>(), 0.5);
  const auto zero = schrodinger_check({Rational(0), Rational(0), Rational(0)}, {{"hbar", 1.0}, {"aNR", 1.0}});
  EXPECT_TRUE(zero.passed);
  EXPECT_DOUBLE_EQ(to_json(zero)["metrics"]["omega"].get<double>(), 0.0);
}

TEST(ReportTest, JsonShapeAndCsv) {
  const auto r = kernel_residual({}, kUnits);
  const auto j = to_json(r);
  for (const char* key : {"case", "grid", "bindings", "max_rel_residual", "convergence_slope"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  const GridSpec g = line(1, 0.5, 1.0, 8);
  const auto f = sample(g, 1, [](const auto& x) { return std::vector<complex>{x[0]}; });
  std::ostringstream csv;
  write_csv(csv, g, f);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "x1,re0,im0");
}

}  // namespace
}  // namespace hwalg
