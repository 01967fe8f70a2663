#pragma once

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "shellrecon/shell_config.hpp"

namespace shellrecon {

enum class Basis { Fourier, SphericalHarmonic };

/// 2-D: n in Z, m unused (0). 3-D: n >= 0, |m| <= n.
struct ModeIndex {
  int n = 0;
  int m = 0;

  auto operator<=>(const ModeIndex&) const = default;
};

/// Finitely supported coefficients of a boundary function.
///
/// 2-D: g(phi) = sum_n g_n e^{in phi}.
/// 3-D: g(theta, phi) = sum_{n,m} g_nm P_n^{|m|}(cos theta) e^{im phi}, un-normalized.
/// The 3-D inner-product weight of mode (n, m) is 2 pi * 2/(2n+1) * (n+|m|)!/(n-|m|)!.
struct BoundaryData {
  Dimension dimension = Dimension::Two;
  Basis basis = Basis::Fourier;
  std::map<ModeIndex, std::complex<double>> coefficients;

  static BoundaryData fourier() { return {Dimension::Two, Basis::Fourier, {}}; }
  static BoundaryData spherical() { return {Dimension::Three, Basis::SphericalHarmonic, {}}; }
  static BoundaryData empty_like(Dimension dim) {
    return dim == Dimension::Two ? fourier() : spherical();
  }

  /// Throws DomainError/IndexError for a mode that does not exist in this basis.
  void set(ModeIndex mode, std::complex<double> value);
  std::complex<double> get(ModeIndex mode) const;

  /// Checks basis/dimension agreement and every mode index.
  void validate() const;

  /// True when the coefficients describe a real-valued function:
  /// g_{-n} = conj(g_n) in 2-D, g_{n,-m} = conj(g_nm) in 3-D (P_n^{|m|} is even in m).
  bool is_conjugate_symmetric(double tol = 1e-14) const;

  /// g at one boundary point; theta is ignored in 2-D.
  std::complex<double> evaluate(double phi, double theta = 0.0) const;
};

BoundaryData operator+(const BoundaryData& a, const BoundaryData& b);
BoundaryData operator*(std::complex<double> s, const BoundaryData& a);

/// Inner-product weight (b_nm, b_nm) of a 3-D basis function.
double spherical_norm_squared(int n, int m);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int points);

/// Coefficients of a sampled boundary function, up to |n| <= n_max.
/// 2-D: trapezoid rule on `phi_points` uniform nodes. 3-D: g(phi, theta), with Gauss-Legendre in
/// cos theta with `mu_points` nodes. Exact for band-limited functions once the rules
/// resolve the products.
BoundaryData project_fourier(const std::function<std::complex<double>(double)>& g, int n_max,
                             int phi_points);
BoundaryData project_spherical(const std::function<std::complex<double>(double, double)>& g,
                               int n_max, int phi_points, int mu_points);

}  // namespace shellrecon
