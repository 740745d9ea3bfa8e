#include <algorithm>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "hwalg/errors.hpp"
#include "hwalg/generators.hpp"
#include "hwalg/operator.hpp"
#include "random_ops.hpp"

namespace hwalg {
namespace {

using Array4 = CommutationTable::Array4;

const ScalarValue kIHbar = ScalarValue::imag() * sym::hbar();

OperatorExpr X(int mu) { return OperatorExpr::x(mu); }
OperatorExpr P(int mu) { return OperatorExpr::p(mu); }
OperatorExpr Id() { return OperatorExpr::identity(); }

TEST(NormalOrderTest, MomentumPassesPosition) {
  EXPECT_EQ(P(1) * X(1), X(1) * P(1) - Id() * kIHbar);
  EXPECT_EQ(P(0) * X(0), X(0) * P(0) + Id() * kIHbar);
  EXPECT_EQ((X(1) * P(2)) * (X(2) * P(1)), X(1) * X(2) * P(1) * P(2) - X(1) * P(1) * kIHbar);
}

TEST(NormalOrderTest, CanonicalCommutators) {
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const ScalarValue expected = kIHbar * ScalarValue(eta(mu, nu));
      EXPECT_EQ(commutator(X(mu), P(nu)), Id() * expected);
      EXPECT_TRUE(commutator(X(mu), X(nu)).is_zero());
      EXPECT_TRUE(commutator(P(mu), P(nu)).is_zero());
    }
  }
  EXPECT_EQ(commutator(OperatorExpr::t(), OperatorExpr::H()), Id() * -kIHbar);
}

TEST(NormalOrderTest, WordsAreStoredNormalOrdered) {
  const OperatorExpr e = P(3) * P(1) * X(2) * X(0);
  for (const auto& [word, m] : e.terms()) {
    const auto letters = word.letters();
    EXPECT_TRUE(std::is_sorted(letters.begin(), letters.end()));
  }
}

TEST(OperatorTest, IncompatibleOperandsThrow) {
  EXPECT_THROW(OperatorExpr::p(1, 2) * OperatorExpr::p(1, 4), IncompatibleOperands);
  EXPECT_THROW(OperatorExpr::p(1, 2) + OperatorExpr::p(1, 1), IncompatibleOperands);
  Array4 g{}, zero{};
  for (int mu = 0; mu < 4; ++mu) g[mu][mu] = ScalarValue(1);
  auto euclid = std::make_shared<const CommutationTable>(g, zero, zero);
  EXPECT_THROW(OperatorExpr::p(1) * OperatorExpr::letter(x_letter(1), 1, euclid), IncompatibleOperands);
}

TEST(OperatorTest, NoncommutativeTablesAreHonoured) {
  Array4 g{}, theta{}, zero{};
  for (int mu = 0; mu < 4; ++mu) g[mu][mu] = ScalarValue(eta(mu, mu));
  theta[1][2] = ScalarValue(1);
  theta[2][1] = ScalarValue(-1);
  auto table = std::make_shared<const CommutationTable>(g, theta, zero);
  const auto x1 = OperatorExpr::letter(x_letter(1), 1, table);
  const auto x2 = OperatorExpr::letter(x_letter(2), 1, table);
  EXPECT_EQ(commutator(x1, x2), OperatorExpr::scalar(kIHbar, 1, table));
  EXPECT_EQ(commutator(x2, x1), OperatorExpr::scalar(-kIHbar, 1, table));
  Array4 bad = theta;
  bad[2][1] = ScalarValue(1);
  EXPECT_THROW(CommutationTable(g, bad, zero), std::invalid_argument);
}

TEST(SubstituteTest, ParameterBindings) {
  const OperatorExpr h2 = OperatorExpr::H() * OperatorExpr::H();
  const ScalarValue a_star = ScalarValue(Rational(-1, 4)) * sym::m(-1) * sym::c(-3);
  EXPECT_EQ((h2 * sym::a_ur()).substitute({{"aUR", a_star}}), h2 * a_star);
  const OperatorExpr e = P(1) * (sym::c() * sym::v(-1));
  EXPECT_EQ(e.substitute({}), e);
  EXPECT_EQ(e.substitute({{"v", sym::c()}}), P(1));
}

TEST(SubstituteTest, ZeroHbarAbelianizes) {
  const auto e = commutator(X(1), P(1)).substitute({{"hbar", ScalarValue(0)}});
  EXPECT_TRUE(e.is_zero());
  const std::map<std::string, ScalarValue, std::less<>> zero{{"hbar", ScalarValue(0)}};
  auto table = std::make_shared<const CommutationTable>(P(1).table()->substitute(zero));
  EXPECT_TRUE(table->is_degenerate());
  EXPECT_FALSE(P(1).table()->is_degenerate());
  const auto pushed = (P(1) * X(1)).substitute(zero).with_table(table);
  EXPECT_TRUE(commutator(P(1).with_table(table), X(1).with_table(table)).is_zero());
  EXPECT_TRUE(commutator(pushed, OperatorExpr::x(2).with_table(table)).is_zero());
}

TEST(AdjointSeriesTest, CommutingPairIsFixed) {
  const auto s = adjoint_series(P(1), P(2));
  EXPECT_EQ(s.order, 0);
  EXPECT_EQ(s.value, P(2));
}

TEST(AdjointSeriesTest, GalileanGaugeShiftTerminatesAtFirstOrder) {
  const ScalarValue weight = sym::q() * sym::phi(1) * (kIHbar * sym::c()).inverse();
  const auto s = adjoint_series(make_boost_nr(1) * weight, P(1));
  EXPECT_EQ(s.order, 1);
  EXPECT_EQ(s.value, P(1) + Id() * (sym::q() * sym::c(-1) * sym::phi(1)));
}

TEST(AdjointSeriesTest, UltraBoostLeavesPositionsInvariant) {
  const auto s = adjoint_series(make_boost_ur(1) * sym::phi(1), X(1));
  EXPECT_EQ(s.order, 0);
  EXPECT_EQ(s.value, X(1));
}

TEST(AdjointSeriesTest, DilationIsNotNilpotent) {
  EXPECT_THROW(adjoint_series(make_dilation(), P(1), 8), NonNilpotentError);
}

TEST(AdjointSeriesTest, ConjugationIsAnAlgebraMorphism) {
  hwtest::Rng rng(31);
  const auto d = make_boost_nr(2) * sym::phi(2) + make_boost_nr(1) * sym::q();
  for (int n = 0; n < 50; ++n) {
    const auto a = hwtest::random_operator(rng, 1, 2, 2).expr;
    const auto b = hwtest::random_operator(rng, 1, 2, 2).expr;
    // Words of degree 2 keep the series finite: ad_d lowers the p-degree.
    const auto ad = [&](const OperatorExpr& e) { return adjoint_series(d, e, 32).value; };
    ASSERT_EQ(ad(a * b), ad(a) * ad(b));
  }
}

TEST(LetterSubstitutionTest, ReplacesMomentaInWordOrder) {
  const auto shifted = P(1) + Id() * sym::phi(1);
  const auto e = X(1) * P(1) * P(1);
  const auto r = substitute_letters(e, {{p_letter(1), shifted}});
  EXPECT_EQ(r, X(1) * shifted * shifted);
}

TEST(TextFormatTest, RendersAndParses) {
  const auto e = P(1) * X(1);
  EXPECT_EQ(to_string(e), "(-i*hbar)*I + (1)*I*x1*p1");
  EXPECT_EQ(parse_operator(to_string(e)), e);
  EXPECT_EQ(parse_operator("p1*x1"), e);
  EXPECT_EQ(parse_operator("H^2 - t"), OperatorExpr::H() * OperatorExpr::H() - OperatorExpr::t());
  EXPECT_EQ(parse_operator("(2*hbar)*s3*p3", 2),
            pauli(3) * (OperatorExpr::p(3, 2) * (ScalarValue(2) * sym::hbar())));
  EXPECT_EQ(to_string(OperatorExpr(1)), "0");
  EXPECT_THROW(parse_operator("x9"), ParseError);
  EXPECT_THROW(parse_operator("(1"), ParseError);
}

TEST(TextFormatTest, PhysicsRenderingRestoresTimeAndEnergy) {
  EXPECT_EQ(to_physics_string(OperatorExpr::t() * OperatorExpr::H()), "t*H");
  EXPECT_EQ(to_physics_string(P(1)), "p1");
}

TEST(TextFormatTest, JsonIsCanonical) {
  hwtest::Rng rng(32);
  for (int n = 0; n < 100; ++n) {
    const auto e = hwtest::random_operator(rng, n % 2 == 0 ? 1 : 2, 4).expr;
    const auto j = to_json(e);
    ASSERT_EQ(operator_from_json(j), e);
    ASSERT_EQ(to_json(operator_from_json(j)).dump(), j.dump());
  }
}

}  // namespace
}  // namespace hwalg
