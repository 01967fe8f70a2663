#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shellrecon/boundary_data.hpp"
#include "shellrecon/shell_config.hpp"

namespace shellrecon {

/// One boundary measurement: the applied Neumann data and the observed Dirichlet trace.
struct Measurement {
  BoundaryData neumann;
  BoundaryData dirichlet;

  Dimension dimension() const { return neumann.dimension; }
  /// Throws DomainError unless both traces share dimension and basis.
  void validate() const;

  /// Dirichlet trace computed by the forward model for the given configuration.
  static Measurement synthesize(const ShellConfig& config, const BoundaryData& g);
};

/// Paper form of the monotone function, eta^alpha I'_nu(r/eta) / I_nu(r/eta).
double monotone_f(Order order, double r, double eta, double alpha);

/// Core admittance t of mode n read back from its ND multiplier lambda (Moebius inversion
/// through the cross-products at (1, r1)). Throws IllPosedModeError when the inversion is
/// numerically degenerate and InconsistentMeasurementError when t <= 0.
double target_from_symbol(Dimension dim, int n, double r1, double lambda);

/// t - I'_nu(r1)/I_nu(r1), evaluated without cancellation; zero for the reference symbol.
double target_offset_from_symbol(Dimension dim, int n, double r1, double lambda);

/// target_from_symbol with lambda = dirichlet/neumann on `mode`. Throws IllPosedModeError
/// when |g_mode| <= 1e-12, and InconsistentMeasurementError when the ratio is not real.
double target_from_measurement(const Measurement& meas, ModeIndex mode, double r1);

struct NoiseOptions {
  /// Each Dirichlet coefficient is multiplied by (1 + stddev * N(0,1)).
  double stddev = 0.0;
  std::uint64_t seed = 0;
};

BoundaryData add_noise(const BoundaryData& data, const NoiseOptions& noise);

struct RecoveryOptions {
  /// Force a mode instead of the usable mode with the largest |g|.
  std::optional<ModeIndex> mode;
  bool cross_validate = true;
  double eta_min = 1e-6;
  double eta_max = 1e6;
  int prescan_points = 64;
  /// Relative disagreement between usable modes that makes the data inconsistent.
  double agreement_tol = 1e-4;
  /// Modes with condition number at or above this are reported but not used.
  double condition_limit = 1e8;
  std::optional<NoiseOptions> noise;
};

struct PerModeEstimate {
  ModeIndex mode;
  double lambda = 0.0;
  double sigma1 = 0.0;   // NaN when the mode could not be inverted
  double residual = 0.0;
  /// |d sigma/d lambda| |lambda| / sigma at the estimate.
  double condition = 0.0;
  bool usable = false;
  std::string note;
};

struct RecoveryResult {
  double sigma1 = 0.0;
  ModeIndex mode_used;
  /// |F(eta*) - t| at the returned root.
  double residual = 0.0;
  /// Final root bracket in sigma1.
  std::pair<double, double> bracket{0.0, 0.0};
  std::vector<PerModeEstimate> per_mode;  // sorted by mode
};

/// Recovers sigma1 from one measurement at known r1. The primary mode is the usable mode
/// with the largest |g| (ties go to the lowest mode). With cross-validation on, every other
/// usable mode must reproduce sigma1 within agreement_tol.
///
/// Throws InconsistentMeasurementError when a target lies outside the range of F on
/// [eta_min, eta_max] or usable modes disagree, IllPosedModeError when no mode is usable.
RecoveryResult recover_sigma(const Measurement& meas, double r1, const RecoveryOptions& options = {});

/// Determinant of the 3x3 indistinguishability system for mode n,
///
///   | D10(r1,r2)  t1  D11(r1,r2) |
///   |     1        0      t2     |
///   | D(r1,r2)     1  D01(r1,r2) |
///
/// with t1, t2 the core admittances of the two configurations. The cross-products are
/// divided by their common exponential scale, and the result by the product of the row
/// norms, so the value lies in [-1, 1].
double nonuniq_determinant(const ShellConfig& config_a, double r2, double sigma2, int n);

struct NonuniqOptions {
  double sigma2_min = 1e-6;
  double sigma2_max = 1e6;
  int scan_points = 256;
  /// Modes 0..diagnostic_modes get a cross-mode symbol gap.
  int diagnostic_modes = 8;
  double tolerance = 1e-10;
};

struct NonuniqPair {
  ShellConfig config_a;
  ShellConfig config_b;
  int mode_n = 0;
  double det_residual = 0.0;
  /// |lambda_n(A) - lambda_n(B)|
  double symbol_gap = 0.0;
  /// Both residuals within tolerance.
  bool verified = false;
  std::vector<std::pair<int, double>> cross_mode_gaps;
};

/// Every sigma2 in [sigma2_min, sigma2_max] that makes (r2, sigma2) indistinguishable from
/// config_a on mode n, sorted by sigma2. Throws NoRootError when the scan finds no sign
/// change.
std::vector<NonuniqPair> find_nonuniq_pairs(const ShellConfig& config_a, double r2, int n,
                                            const NonuniqOptions& options = {});

struct PotentialReport {
  double sigma1 = 0.0;
  double e_tilde = 0.0;
  double u_tilde_core = 0.0;   // e_tilde + 1/sigma1
  double u_tilde_shell = 0.0;  // e_tilde + 1
};

PotentialReport potential_report(double sigma1, double e_tilde);

}  // namespace shellrecon
