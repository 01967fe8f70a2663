#pragma once

// Test-only reference: the per-mode transmission system assembled from Boost Bessel values
// and solved by Gaussian elimination.

#include <array>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <cmath>
#include <utility>

namespace testref {

struct Solution {
  double u, v, w;
  double boundary;  // psi(1)
};

inline std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> a) {
  for (int c = 0; c < 3; ++c) {
    int p = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    std::swap(a[c], a[p]);
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return {a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
}

// Unit Neumann data on mode n. dim 2: nu = n, s = 0; dim 3: nu = n + 1/2, s = 1/2.
inline Solution solve_mode(int dim, int n, double r1, double sigma) {
  namespace bm = boost::math;
  const double nu = dim == 2 ? n : n + 0.5;
  const double s = dim == 2 ? 0.0 : 0.5;
  const double rs = std::sqrt(sigma);
  const double xc = r1 / rs;
  const double ic = bm::cyl_bessel_i(nu, xc), dic = bm::cyl_bessel_i_prime(nu, xc);
  const double i1 = bm::cyl_bessel_i(nu, r1), di1 = bm::cyl_bessel_i_prime(nu, r1);
  const double k1 = bm::cyl_bessel_k(nu, r1), dk1 = bm::cyl_bessel_k_prime(nu, r1);
  const double ib = bm::cyl_bessel_i(nu, 1.0), dib = bm::cyl_bessel_i_prime(nu, 1.0);
  const double kb = bm::cyl_bessel_k(nu, 1.0), dkb = bm::cyl_bessel_k_prime(nu, 1.0);
  // psi = r^{-s} f, psi' = r^{-s} (f' - s f / r)
  std::array<std::array<double, 4>, 3> a{{
      {ic, -i1, -k1, 0.0},
      {sigma * (dic / rs - s * ic / r1), -(di1 - s * i1 / r1), -(dk1 - s * k1 / r1), 0.0},
      {0.0, dib - s * ib, dkb - s * kb, 1.0},
  }};
  const auto x = solve3(a);
  return {x[0], x[1], x[2], x[1] * ib + x[2] * kb};
}

}  // namespace testref
