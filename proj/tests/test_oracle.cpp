#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <cmath>

#include "shellrecon/errors.hpp"
#include "shellrecon/nd_map.hpp"
#include "shellrecon/oracle.hpp"

using namespace shellrecon;

TEST(Oracle, HomogeneousDisk) {
  for (double r1 : {0.3, 0.77}) {
    const OracleSolution s = solve_radial_bvp({{Dimension::Two, r1, 1.0}, 1, 4000});
    const double expect = boost::math::cyl_bessel_i(1, 1.0) / boost::math::cyl_bessel_i_prime(1, 1.0);
    EXPECT_NEAR(s.symbol_estimate, expect, 1e-6);
  }
}

TEST(Oracle, SolutionShape) {
  const OracleSolution s = solve_radial_bvp({{Dimension::Two, 0.5, 2.0}, 2, 1000});
  ASSERT_EQ(s.r.size(), 1001u);
  ASSERT_EQ(s.u.size(), 1001u);
  EXPECT_EQ(s.u.front(), 0.0);
  EXPECT_EQ(s.boundary_value, s.u.back());
  EXPECT_EQ(s.interface_node, 500);
  EXPECT_EQ(s.interface_offset, 0.0);
  const double slope = (s.u[1000] - s.u[999]) * 1000.0;
  EXPECT_NEAR(slope, 1.0, 5e-3);
}

TEST(Oracle, SecondOrderConvergence) {
  for (auto [dim, n, r1, s] : {std::tuple{Dimension::Two, 0, 0.5, 2.0},
                               std::tuple{Dimension::Three, 2, 0.3, 0.5},
                               std::tuple{Dimension::Two, 1, 0.5, 1.0}}) {
    const auto rows = convergence_study({{dim, r1, s}, n, 4000}, {1000, 2000, 4000});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_TRUE(std::isnan(rows[0].observed_order));
    for (std::size_t k = 1; k < rows.size(); ++k) {
      EXPECT_GE(rows[k].observed_order, 1.8);
      EXPECT_LE(rows[k].observed_order, 2.2);
    }
    EXPECT_LE(rows.back().error, 1e-5);
  }
}

TEST(Oracle, InterfaceSnapReported) {
  const auto rows = convergence_study({{Dimension::Two, 0.999, 2.0}, 1, 1000}, {1000, 2000, 4000});
  for (const ConvergenceRow& r : rows) {
    EXPECT_TRUE(std::isfinite(r.error));
    EXPECT_LE(std::fabs(r.interface_offset), 0.5 * r.h + 1e-15);
  }
  const auto odd = solve_radial_bvp({{Dimension::Two, 0.3337, 2.0}, 1, 1000});
  EXPECT_NE(odd.interface_offset, 0.0);
}

TEST(Oracle, Validation) {
  EXPECT_THROW(solve_radial_bvp({{Dimension::Two, 0.5, 2.0}, 1, 999}), DomainError);
  EXPECT_THROW(solve_radial_bvp({{Dimension::Two, 0.5, 2.0}, -1, 1000}), DomainError);
  EXPECT_THROW(solve_radial_bvp({{Dimension::Two, 1.5, 2.0}, 1, 1000}), DomainError);
  EXPECT_THROW(convergence_study({{Dimension::Two, 0.5, 2.0}, 1, 1000}, {1000, 2000}), DomainError);
  EXPECT_THROW(convergence_study({{Dimension::Two, 0.5, 2.0}, 1, 1000}, {1000, 2000, 3000}),
               DomainError);
}
