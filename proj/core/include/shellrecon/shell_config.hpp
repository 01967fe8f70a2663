#pragma once

#include "shellrecon/special_fn.hpp"

namespace shellrecon {

enum class Dimension { Two = 2, Three = 3 };

inline int as_int(Dimension d) { return static_cast<int>(d); }

/// Concentric core-shell domain in the unit disk/ball.
///
/// The reduced potential is E + 1/sigma1 in the core |x| < r1 and E + 1 in the shell, and
/// the flux condition across |x| = r1 is d_r psi(r1+) = sigma1 d_r psi(r1-).
struct ShellConfig {
  Dimension dimension = Dimension::Two;
  double r1 = 0.5;
  double sigma1 = 1.0;

  /// Throws DomainError unless 0 < r1 < 1 and sigma1 > 0 (both finite).
  void validate() const;
};

/// Bessel order of angular mode n: n in 2-D, n + 1/2 in 3-D. Negative 2-D modes fold to |n|.
Order mode_order(Dimension dim, int n);

/// Radial solutions are r^{-s} Z_nu(kappa r) with s = 0 in 2-D and s = 1/2 in 3-D.
inline double radial_shift(Dimension dim) { return dim == Dimension::Two ? 0.0 : 0.5; }

/// Interface admittance of the core seen from the shell, in the shell's Bessel variable.
///
/// If the core solution is r^{-s} I_nu(r/sqrt(sigma)) and the shell solution is
/// r^{-s} f(r) with f = v I_nu + w K_nu, the transmission conditions at r1 fix
/// f'(r1)/f(r1) to
///
///   t = sqrt(sigma) I'_nu(r1/sqrt(sigma)) / I_nu(r1/sqrt(sigma)) + s (1 - sigma)/r1
///     = sqrt(sigma) I_{nu+1}/I_nu (r1/sqrt(sigma)) + n sigma / r1 + s / r1,
///
/// the second line being the cancellation-free form that is evaluated. t is strictly
/// increasing in sigma, which is what makes the core coefficient recoverable.
double core_admittance(Dimension dim, int n, double r1, double sigma);

/// t(sigma) - t(1), exactly zero at sigma = 1.
double core_admittance_offset(Dimension dim, int n, double r1, double sigma);

}  // namespace shellrecon
