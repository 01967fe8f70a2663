#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "radial_system.hpp"
#include "shellrecon/errors.hpp"
#include "shellrecon/nd_map.hpp"
#include "shellrecon/oracle.hpp"

using namespace shellrecon;

TEST(Rho, VanishesAtUnitSigma) {
  EXPECT_EQ(rho({Dimension::Two, 0.5, 1.0}, 3), 0.0);
  EXPECT_EQ(rho({Dimension::Three, 0.5, 1.0}, 0), 0.0);
}

TEST(Rho, MatchesShellMixingOfReferenceSystem) {
  for (auto [dim, r1, s, n] : {std::tuple{2, 0.5, 2.0, 0}, std::tuple{3, 0.3, 0.5, 1}}) {
    const testref::Solution ref = testref::solve_mode(dim, n, r1, s);
    const ShellConfig c{dim == 2 ? Dimension::Two : Dimension::Three, r1, s};
    EXPECT_NEAR(rho(c, n), -ref.w / ref.v, 1e-11 * std::fabs(ref.w / ref.v));
  }
}

TEST(NdSymbol, BothFormsAgree) {
  for (Dimension dim : {Dimension::Two, Dimension::Three}) {
    for (double r1 : {0.1, 0.5, 0.9}) {
      for (double s : {0.1, 2.0, 10.0}) {
        for (int n : {0, 1, 5, 30}) {
          const ShellConfig c{dim, r1, s};
          const double a = nd_symbol(c, n, SymbolForm::CrossProduct);
          const double b = nd_symbol(c, n, SymbolForm::Rho);
          EXPECT_NEAR(a, b, 1e-12 * std::fabs(a)) << as_int(dim) << " " << r1 << " " << s << " " << n;
        }
      }
    }
  }
}

TEST(NdSymbol, ReferenceAtUnitSigma) {
  const double i1 = boost::math::cyl_bessel_i(1, 1.0);
  const double di1 = boost::math::cyl_bessel_i_prime(1, 1.0);
  EXPECT_NEAR(nd_symbol({Dimension::Two, 0.5, 1.0}, 1), i1 / di1, 1e-14);
}

TEST(NdSymbol, MatchesDirectLinearSolve) {
  for (int dim : {2, 3}) {
    for (double r1 : {0.2, 0.5, 0.8}) {
      for (double s : {0.25, 4.0}) {
        for (int n : {0, 1, 2, 6}) {
          const testref::Solution ref = testref::solve_mode(dim, n, r1, s);
          const ShellConfig c{dim == 2 ? Dimension::Two : Dimension::Three, r1, s};
          EXPECT_NEAR(nd_symbol(c, n), ref.boundary, 1e-11 * std::fabs(ref.boundary));
        }
      }
    }
  }
}

TEST(NdSymbol, AgreesWithOracle) {
  for (auto [dim, n] : {std::pair{Dimension::Two, 1}, std::pair{Dimension::Three, 0}}) {
    const ShellConfig c{dim, 0.5, 2.0};
    const OracleSolution sol = solve_radial_bvp({c, n, 4000});
    EXPECT_NEAR(sol.symbol_estimate, nd_symbol(c, n), 1e-6);
  }
}

TEST(NdSymbol, NegativeModesFold) {
  const ShellConfig c{Dimension::Two, 0.4, 3.0};
  EXPECT_EQ(nd_symbol(c, -3), nd_symbol(c, 3));
}

TEST(NdSymbol, InvalidConfig) {
  EXPECT_THROW(nd_symbol({Dimension::Two, 1.0, 2.0}, 0), DomainError);
  EXPECT_THROW(nd_symbol({Dimension::Two, 0.5, 0.0}, 0), DomainError);
}

TEST(ReferenceSymbol, ClosedForms) {
  const double e = std::sinh(1.0) / (std::cosh(1.0) - std::sinh(1.0));
  // psi = r^{-1/2} I_{1/2}(r) has psi(1)/psi'(1) = sinh(1) / (cosh(1) - sinh(1))
  EXPECT_NEAR(reference_symbol(Dimension::Three, 0), e, 1e-13 * e);
  const double i0 = boost::math::cyl_bessel_i(0, 1.0);
  const double i1 = boost::math::cyl_bessel_i(1, 1.0);
  EXPECT_NEAR(reference_symbol(Dimension::Two, 0), i0 / i1, 1e-14 * i0 / i1);
  EXPECT_NEAR(reference_symbol(Dimension::Two, 40), 1.0 / 40.0, 0.05 / 40.0);
}

TEST(SymbolOffset, MatchesDifferenceAndDecays) {
  const ShellConfig c{Dimension::Two, 0.5, 2.0};
  for (int n : {0, 1, 3}) {
    const double diff = nd_symbol(c, n) - reference_symbol(Dimension::Two, n);
    EXPECT_NEAR(symbol_offset(c, n), diff, 1e-10 * std::fabs(diff));
  }
  // ratio of consecutive offsets approaches r1^2
  const double ratio = symbol_offset(c, 61) / symbol_offset(c, 60);
  EXPECT_NEAR(ratio, 0.25, 0.02);
  EXPECT_GT(std::fabs(symbol_offset(c, 400)), 0.0);
  EXPECT_EQ(symbol_offset({Dimension::Three, 0.5, 1.0}, 7), 0.0);
}

TEST(SymbolTable, SizesAndValues) {
  const NdSymbolTable t = symbol_table({Dimension::Three, 0.4, 0.25}, 64);
  ASSERT_EQ(t.symbols.size(), 65u);
  EXPECT_EQ(t.symbols[10], nd_symbol({Dimension::Three, 0.4, 0.25}, 10));
  EXPECT_EQ(symbol_table({Dimension::Two, 0.4, 3.0}, 0).symbols.size(), 1u);
  EXPECT_EQ(reference_table(Dimension::Two, 5).symbols[5], reference_symbol(Dimension::Two, 5));
}

TEST(OperatorNorm, ReferenceIsWeightedSup) {
  const NormResult r = operator_norm(NdOperator::reference(Dimension::Two), {8, false, 8, 3});
  double expect = 0.0;
  for (int n = 0; n <= 8; ++n) {
    expect = std::max(expect, sobolev_weight(n) * reference_symbol(Dimension::Two, n));
  }
  EXPECT_DOUBLE_EQ(r.norm, expect);
}

TEST(DifferenceNorm, ZeroAtReferenceAndCertified) {
  const NdOperator ref = NdOperator::reference(Dimension::Two);
  const NormResult zero = difference_norm(NdOperator::shell({Dimension::Two, 0.5, 1.0}), ref);
  EXPECT_EQ(zero.norm, 0.0);
  const NormResult r = difference_norm(NdOperator::shell({Dimension::Two, 0.5, 2.0}), ref);
  EXPECT_GT(r.norm, 0.0);
  EXPECT_TRUE(r.tail_certified);
  EXPECT_GE(r.n_max_used, 64);
}

TEST(DifferenceNorm, BoundsRandomRayleighQuotients) {
  // ||(R_a - R) g||_{1/2} / ||g||_{-1/2} for random g never exceeds the multiplier sup
  for (Dimension dim : {Dimension::Two, Dimension::Three}) {
    const NdOperator a = NdOperator::shell({dim, 0.6, 3.0});
    const double sup = difference_norm(a, NdOperator::reference(dim)).norm;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    double best = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      double num = 0.0;
      double den = 0.0;
      for (int n = 0; n <= 40; ++n) {
        const double g2 = std::pow(normal(rng), 2) * std::exp(-0.2 * n);
        const double w = sobolev_weight(n);
        num += w * std::pow(a.offset(n), 2) * g2;
        den += g2 / w;
      }
      best = std::max(best, std::sqrt(num / den));
    }
    EXPECT_LE(best, sup * (1.0 + 1e-12));
    EXPECT_GT(best, 0.2 * sup);
  }
}

TEST(DifferenceNorm, DimensionMismatch) {
  EXPECT_THROW(difference_norm(NdOperator::reference(Dimension::Two),
                               NdOperator::reference(Dimension::Three)),
               DomainError);
}

TEST(NormSweep, SigmaTowardOneDecreases) {
  const SweepTable t =
      norm_sweep({Dimension::Two, 0.5, 2.0}, SweepAxis::Sigma1ToOne, {1.5, 1.25, 1.125, 1.0625});
  EXPECT_TRUE(t.strictly_decreasing);
  EXPECT_TRUE(t.all_certified);
  const SweepTable below =
      norm_sweep({Dimension::Two, 0.5, 2.0}, SweepAxis::Sigma1ToOne, {0.5, 0.75, 0.875, 0.9375});
  EXPECT_TRUE(below.strictly_decreasing);
}

TEST(NormSweep, RadiusTowardZeroDecreases) {
  for (Dimension dim : {Dimension::Two, Dimension::Three}) {
    const SweepTable t = norm_sweep({dim, 0.5, 4.0}, SweepAxis::R1ToZero, {0.4, 0.2, 0.1, 0.05});
    EXPECT_TRUE(t.strictly_decreasing);
    EXPECT_LT(t.rows.back().norm, t.rows.front().norm / 50.0);
  }
}

TEST(NormSweep, SinglePointAtOne) {
  const SweepTable t = norm_sweep({Dimension::Two, 0.5, 2.0}, SweepAxis::Sigma1ToOne, {1.0});
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].norm, 0.0);
}

TEST(NormSweep, CsvHeaders) {
  const SweepTable t = norm_sweep({Dimension::Two, 0.5, 2.0}, SweepAxis::Sigma1ToOne, {1.5});
  EXPECT_EQ(sweep_to_csv(t).rfind("parameter,norm,argmax_mode\n", 0), 0u);
  EXPECT_EQ(symbol_table_to_csv(symbol_table({Dimension::Two, 0.5, 2.0}, 2)).rfind("n,lambda\n", 0), 0u);
}
