#pragma once

#include <array>
#include <complex>
#include <vector>

#include "shellrecon/boundary_data.hpp"
#include "shellrecon/shell_config.hpp"

namespace shellrecon {

/// Radial coefficients of one mode. With nu = mode order and s = radial_shift:
///
///   core  (r < r1): u r^{-s} I_nu(r / sqrt(sigma1))
///   shell (r > r1): r^{-s} [v I_nu(r) + w K_nu(r)]
///
/// times e^{in phi} (2-D) or P_n^{|m|}(cos theta) e^{im phi} (3-D).
struct ModeCoefficients {
  ModeIndex mode;
  std::complex<double> u;
  std::complex<double> v;
  std::complex<double> w;
};

struct WaveCoefficients {
  ShellConfig config;
  std::vector<ModeCoefficients> modes;  // sorted by mode index
};

/// Solves the per-mode transmission system for Neumann data g. Modes absent from g are
/// absent from the result. Throws DegeneracyError (Neumann resonance) or RangeError when a
/// coefficient does not fit in a double (very high modes).
WaveCoefficients solve_coefficients(const ShellConfig& config, const BoundaryData& g);

/// Relative residuals of the three equations for one mode:
///   [0] u I(r1/sqrt(sigma1)) = v I(r1) + w K(r1)
///   [1] u (sqrt(sigma1) I'(r1/sqrt(sigma1)) + s (1 - sigma1)/r1 I(r1/sqrt(sigma1)))
///         = v I'(r1) + w K'(r1)
///   [2] v (I'(1) - s I(1)) + w (K'(1) - s K(1)) = g
/// each divided by the largest term in its equation. Uses unscaled Bessel values.
std::array<double, 3> system_residuals(const ShellConfig& config, const ModeCoefficients& c,
                                       std::complex<double> g);

struct GridPoint {
  double r = 1.0;
  double phi = 0.0;
  double theta = 0.0;  // 3-D only
};

using EvaluationGrid = std::vector<GridPoint>;

/// Which radial formula to use. Auto picks the core for r < r1 and the shell otherwise;
/// forcing a branch at r = r1 is how the transmission conditions are probed.
enum class Branch { Auto, Core, Shell };

struct WaveSample {
  std::complex<double> value;
  std::complex<double> radial_derivative;
};

/// psi and d psi/dr at each grid point. Below r = 1e-8 the core branch uses the leading
/// small-argument term of I_nu, which stays finite as r -> 0.
std::vector<WaveSample> evaluate_wave(const WaveCoefficients& coeffs, const EvaluationGrid& grid,
                                      Branch branch = Branch::Auto);

/// Coefficients of psi on r = 1: lambda_n g_n per mode.
BoundaryData dirichlet_trace(const ShellConfig& config, const BoundaryData& g);

}  // namespace shellrecon
