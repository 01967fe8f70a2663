#include "shellrecon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "shellrecon/errors.hpp"
#include "shellrecon/nd_map.hpp"

namespace shellrecon {

void RadialProblem::validate() const {
  config.validate();
  if (mode_n < 0) throw DomainError("RadialProblem: mode_n must be >= 0");
  if (grid_points < 1000) throw DomainError("RadialProblem: grid_points must be >= 1000");
}

OracleSolution solve_radial_bvp(const RadialProblem& problem) {
  problem.validate();
  const int d = as_int(problem.config.dimension);
  const int n = problem.mode_n;
  const double ell = d == 2 ? static_cast<double>(n) * n : static_cast<double>(n) * (n + 1);
  const int N = problem.grid_points;
  const double h = 1.0 / N;
  const double sigma = problem.config.sigma1;

  OracleSolution sol;
  sol.interface_node = static_cast<int>(std::lround(problem.config.r1 * N));
  if (sol.interface_node < 1) sol.interface_node = 1;
  if (sol.interface_node > N - 1) sol.interface_node = N - 1;
  const double r_iface = sol.interface_node * h;
  sol.interface_offset = problem.config.r1 - r_iface;

  auto kappa = [&](double r) { return r < r_iface ? sigma : 1.0; };
  auto pow_d1 = [&](double r) { return d == 2 ? r : r * r; };
  // int_a^b r^{d-1} (k l / r^2 + 1) dr on a piece with constant k
  auto weight = [&](double a, double b, double k) {
    const double volume = (std::pow(b, d) - std::pow(a, d)) / d;
    if (ell == 0.0) return volume;
    const double singular = d == 2 ? std::log(b / a) : b - a;
    return volume + k * ell * singular;
  };
  auto cell_weight = [&](int i) {
    const double a = std::max(0.0, (i - 0.5) * h);
    const double b = std::min(1.0, (i + 0.5) * h);
    if (a < r_iface && b > r_iface) {
      return weight(a, r_iface, sigma) + weight(r_iface, b, 1.0);
    }
    return weight(a, b, kappa(0.5 * (a + b)));
  };
  // face conductance between nodes i and i+1
  auto face = [&](int i) {
    const double r = (i + 0.5) * h;
    return pow_d1(r) * kappa(r) / h;
  };

  const int first = ell == 0.0 ? 0 : 1;  // u_0 = 0 when l > 0
  const int rows = N - first + 1;
  std::vector<double> lower(rows, 0.0);
  std::vector<double> diag(rows, 0.0);
  std::vector<double> upper(rows, 0.0);
  std::vector<double> rhs(rows, 0.0);
  for (int i = first; i <= N; ++i) {
    const int k = i - first;
    const double left = i > 0 ? face(i - 1) : 0.0;
    const double right = i < N ? face(i) : 0.0;
    lower[k] = i > first ? left : 0.0;
    upper[k] = right;
    diag[k] = -(left + right + cell_weight(i));
  }
  rhs[rows - 1] = -1.0;  // outer flux r^{d-1} u'(1) = 1

  // Thomas algorithm
  for (int k = 1; k < rows; ++k) {
    if (!(std::fabs(diag[k - 1]) > 1e-300)) {
      throw DegeneracyError("solve_radial_bvp: vanishing pivot at node " +
                            std::to_string(k - 1 + first));
    }
    const double m = lower[k] / diag[k - 1];
    diag[k] -= m * upper[k - 1];
    rhs[k] -= m * rhs[k - 1];
  }
  if (!(std::fabs(diag[rows - 1]) > 1e-300)) {
    throw DegeneracyError("solve_radial_bvp: vanishing pivot at the outer boundary");
  }
  std::vector<double> x(rows);
  x[rows - 1] = rhs[rows - 1] / diag[rows - 1];
  for (int k = rows - 2; k >= 0; --k) x[k] = (rhs[k] - upper[k] * x[k + 1]) / diag[k];

  sol.r.resize(N + 1);
  sol.u.assign(N + 1, 0.0);
  for (int i = 0; i <= N; ++i) sol.r[i] = i * h;
  for (int k = 0; k < rows; ++k) sol.u[k + first] = x[k];
  sol.boundary_value = sol.u[N];
  sol.symbol_estimate = sol.u[N];
  return sol;
}

std::vector<ConvergenceRow> convergence_study(const RadialProblem& problem,
                                              const std::vector<int>& grids) {
  if (grids.size() < 3) throw DomainError("convergence_study: need at least three grids");
  const double ratio = static_cast<double>(grids[1]) / grids[0];
  for (std::size_t k = 1; k < grids.size(); ++k) {
    const double rk = static_cast<double>(grids[k]) / grids[k - 1];
    if (!(rk > 1.0) || std::fabs(rk - ratio) > 1e-12 * ratio) {
      throw DomainError("convergence_study: grids must increase geometrically");
    }
  }
  const double reference = nd_symbol(problem.config, problem.mode_n);
  std::vector<ConvergenceRow> rows;
  for (int points : grids) {
    RadialProblem p = problem;
    p.grid_points = points;
    const OracleSolution sol = solve_radial_bvp(p);
    ConvergenceRow row;
    row.grid_points = points;
    row.h = 1.0 / points;
    row.error = std::fabs(sol.symbol_estimate - reference);
    row.interface_offset = sol.interface_offset;
    row.observed_order = rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                                      : std::log(rows.back().error / row.error) / std::log(ratio);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace shellrecon
