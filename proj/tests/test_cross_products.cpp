#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <cmath>
#include <random>

#include "shellrecon/cross_products.hpp"
#include "shellrecon/errors.hpp"

using namespace shellrecon;
namespace bm = boost::math;

namespace {

struct Direct {
  double d, d10, d01, d11;
};

Direct direct(double nu, double x, double y) {
  const double ix = bm::cyl_bessel_i(nu, x), kx = bm::cyl_bessel_k(nu, x);
  const double iy = bm::cyl_bessel_i(nu, y), ky = bm::cyl_bessel_k(nu, y);
  const double dix = bm::cyl_bessel_i_prime(nu, x), dkx = bm::cyl_bessel_k_prime(nu, x);
  const double diy = bm::cyl_bessel_i_prime(nu, y), dky = bm::cyl_bessel_k_prime(nu, y);
  return {ix * ky - kx * iy, dix * ky - dkx * iy, ix * dky - kx * diy, dix * dky - dkx * diy};
}

}  // namespace

TEST(CrossProducts, MatchDirectProducts) {
  for (int n : {0, 1, 4}) {
    for (auto [x, y] : {std::pair{1.0, 0.5}, std::pair{0.3, 1.0}, std::pair{2.0, 3.5}}) {
      const Direct ref = direct(n, x, y);
      const CrossProductValues cp = cross_products(Order::integer(n), x, y);
      const double scale = std::fabs(ref.d11) + std::fabs(ref.d) + std::fabs(ref.d10) + std::fabs(ref.d01);
      EXPECT_NEAR(cp.d(), ref.d, 1e-12 * scale);
      EXPECT_NEAR(cp.d10(), ref.d10, 1e-12 * scale);
      EXPECT_NEAR(cp.d01(), ref.d01, 1e-12 * scale);
      EXPECT_NEAR(cp.d11(), ref.d11, 1e-12 * scale);
    }
  }
}

TEST(CrossProducts, HalfIntegerMatchesDirect) {
  const Direct ref = direct(2.5, 1.0, 0.4);
  const CrossProductValues cp = cross_products(Order::half_integer(2), 1.0, 0.4);
  EXPECT_LE(std::fabs(cp.d() - ref.d) / std::fabs(ref.d), 1e-12);
  EXPECT_LE(std::fabs(cp.d11() - ref.d11) / std::fabs(ref.d11), 1e-12);
}

TEST(CrossProducts, DiagonalValues) {
  const CrossProductValues cp = cross_products(Order::integer(3), 0.7, 0.7);
  EXPECT_EQ(cp.d_hat, 0.0);
  EXPECT_NEAR(cp.d10(), 1.0 / 0.7, 1e-13);
  EXPECT_NEAR(cp.d01(), -1.0 / 0.7, 1e-13);
}

TEST(CrossProducts, Antisymmetry) {
  const CrossProductValues a = cross_products(Order::integer(2), 0.4, 1.3);
  const CrossProductValues b = cross_products(Order::integer(2), 1.3, 0.4);
  EXPECT_NEAR(a.d(), -b.d(), 1e-14 * std::fabs(a.d()));
  EXPECT_NEAR(a.d10(), -b.d01(), 1e-14 * std::fabs(a.d10()));
}

TEST(CrossProducts, MantissasStayFiniteWhereProductsOverflow) {
  const CrossProductValues cp = cross_products(Order::integer(200), 1.0, 1e-3);
  EXPECT_TRUE(std::isfinite(cp.d_hat));
  EXPECT_TRUE(std::isfinite(cp.d11_hat));
  EXPECT_GT(cp.log_scale, 709.0);
  EXPECT_THROW(cp.d(), RangeError);
}

TEST(CrossProducts, IdentitiesHoldOnRandomTriples) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n) {
    for (Order o : {Order::integer(n), Order::half_integer(n)}) {
      for (int k = 0; k < 30; ++k) {
        worst = std::max(worst, check_identities(o, u(rng), u(rng), u(rng)).max_relative());
      }
    }
  }
  EXPECT_LE(worst, 1e-11);
}

TEST(CrossProducts, IdentityZeroAgreesWithDirect) {
  // [0] reports D10(x,x) - 1/x
  const IdentityReport r = check_identities(Order::integer(1), 0.8, 0.3, 0.5);
  EXPECT_LE(r.max_relative(), 1e-12);
  const Direct d = direct(1.0, 0.8, 0.8);
  EXPECT_NEAR(d.d10, 1.0 / 0.8, 1e-12);
}

TEST(CrossProducts, DomainErrors) {
  EXPECT_THROW(cross_products(Order::integer(0), 0.0, 1.0), DomainError);
  EXPECT_THROW(cross_products(Order::integer(0), 1.0, -2.0), DomainError);
}
