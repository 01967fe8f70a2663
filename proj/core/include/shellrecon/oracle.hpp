#pragma once

#include <vector>

#include "shellrecon/shell_config.hpp"

namespace shellrecon {

/// Radial two-point problem for one angular mode, solved without Bessel functions:
///
///   (r^{d-1} k u')' = r^{d-1} (k l / r^2 + 1) u,   k = sigma1 (r < r1), 1 (r > r1),
///
/// l = n^2 (2-D) or n(n+1) (3-D), u regular at 0 and u'(1) = 1. The flux k u' is
/// continuous, which is the transmission condition u'(r1+) = sigma1 u'(r1-).
struct RadialProblem {
  ShellConfig config;
  int mode_n = 0;
  /// Number of uniform intervals on [0, 1]; at least 1000.
  int grid_points = 4000;

  void validate() const;
};

struct OracleSolution {
  std::vector<double> r;
  std::vector<double> u;
  double boundary_value = 0.0;
  /// u(1) for unit Neumann data, i.e. the estimate of the mode's ND multiplier.
  double symbol_estimate = 0.0;
  /// Grid node the interface was moved to, and r1 minus that node's radius.
  int interface_node = 0;
  double interface_offset = 0.0;
};

/// Cell-centred finite volumes on the nodes r_i = i/N with exact cell integrals of the
/// reaction weight, the interface on a node, and a tridiagonal solve. Second order when
/// r1 N is an integer. Throws DegeneracyError on a vanishing pivot.
OracleSolution solve_radial_bvp(const RadialProblem& problem);

struct ConvergenceRow {
  int grid_points = 0;
  double h = 0.0;
  double error = 0.0;           // |symbol_estimate - nd_symbol|
  double observed_order = 0.0;  // log2 of the error ratio to the previous row; NaN on row 0
  double interface_offset = 0.0;
};

/// Solves on each grid and compares with the Bessel-series symbol. The grids must be at
/// least three, increasing, with a constant ratio.
std::vector<ConvergenceRow> convergence_study(const RadialProblem& problem,
                                              const std::vector<int>& grids);

}  // namespace shellrecon
