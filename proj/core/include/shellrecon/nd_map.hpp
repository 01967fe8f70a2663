#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "shellrecon/cross_products.hpp"
#include "shellrecon/shell_config.hpp"

namespace shellrecon {

/// Which algebraic route nd_symbol takes. Both give the same multiplier.
enum class SymbolForm {
  /// quotient of cross-products D, D_{1,0}, D_{0,1}, D_{1,1} at (1, r1)
  CrossProduct,
  /// through the shell mixing coefficient rho
  Rho,
};

/// Mixing coefficient rho = w/(-v) of K_nu in the shell solution for mode n:
///
///   rho = [b I(r1) - a I'(r1)] / [b K(r1) - a K'(r1)],   b/a = core_admittance.
///
/// Vanishes at sigma1 = 1. Underflows to zero for large n rather than failing.
double rho(const ShellConfig& config, int n);

/// Multiplier lambda_n of the Neumann-to-Dirichlet map on mode n (2-D: e^{in phi};
/// 3-D: P_n^{|m|}(cos theta) e^{im phi}, independent of m).
/// Throws DegeneracyError if the denominator is numerically zero.
double nd_symbol(const ShellConfig& config, int n, SymbolForm form = SymbolForm::CrossProduct);

/// Multiplier of the homogeneous disk/ball, 1/(I'_nu(1)/I_nu(1) - s).
double reference_symbol(Dimension dim, int n);

/// nd_symbol(config, n) - reference_symbol(dim, n), assembled so that no cancellation
/// between the two symbols occurs. Decays like r1^{2n} for large n.
double symbol_offset(const ShellConfig& config, int n);

struct NdSymbolTable {
  Dimension dimension = Dimension::Two;
  int n_max = 0;
  std::vector<double> symbols;  // index n = 0..n_max
};

NdSymbolTable symbol_table(const ShellConfig& config, int n_max);
NdSymbolTable reference_table(Dimension dim, int n_max);

/// Either a core-shell configuration or the homogeneous reference.
class NdOperator {
 public:
  static NdOperator reference(Dimension dim) { return NdOperator(dim, std::nullopt); }
  static NdOperator shell(const ShellConfig& config);

  Dimension dimension() const { return dim_; }
  const std::optional<ShellConfig>& config() const { return config_; }
  double symbol(int n) const;
  /// symbol(n) - reference_symbol(n)
  double offset(int n) const;

 private:
  NdOperator(Dimension dim, std::optional<ShellConfig> config) : dim_(dim), config_(config) {}

  Dimension dim_;
  std::optional<ShellConfig> config_;
};

/// Sobolev weight (1 + n^2)^{1/2} of the H^{-1/2} -> H^{1/2} multiplier norm. In 3-D the
/// weight (1 + |m|^2)^{1/2} is largest at |m| = n for a symbol that ignores m.
inline double sobolev_weight(int n) { return std::sqrt(1.0 + static_cast<double>(n) * n); }

struct NormOptions {
  int n_max = 64;
  /// Double n_max until the tail check passes or n_max reaches n_cap.
  bool auto_extend = true;
  int n_cap = 512;
  /// Number of trailing terms that must be non-increasing.
  int tail_window = 10;
};

struct NormResult {
  double norm = 0.0;
  int argmax_mode = 0;
  int n_max_used = 0;
  bool tail_certified = false;
};

/// sup_{n <= n_max} w_n |lambda_n| of a single operator.
NormResult operator_norm(const NdOperator& op, const NormOptions& options = {});

/// sup_{n <= n_max} w_n |lambda_n(a) - lambda_n(b)|; exact for two multipliers in the same
/// basis once the tail is certified.
NormResult difference_norm(const NdOperator& a, const NdOperator& b,
                           const NormOptions& options = {});

enum class SweepAxis {
  Sigma1ToOne,  // vary sigma1 at fixed r1
  R1ToZero,     // vary r1 at fixed sigma1
};

struct SweepRow {
  double parameter = 0.0;
  double norm = 0.0;
  int argmax_mode = 0;
  bool tail_certified = false;
};

struct SweepTable {
  SweepAxis axis = SweepAxis::Sigma1ToOne;
  std::vector<SweepRow> rows;
  /// Norm column strictly decreasing in the order the points were given.
  bool strictly_decreasing = false;
  bool all_certified = false;
};

/// ||R_{sigma1,r1} - R|| at each sweep point; `base` supplies the fixed parameter.
SweepTable norm_sweep(const ShellConfig& base, SweepAxis axis, const std::vector<double>& points,
                      const NormOptions& options = {});

/// CSV with header `parameter,norm,argmax_mode`, 17 significant digits.
std::string sweep_to_csv(const SweepTable& table);
/// CSV with header `n,lambda`.
std::string symbol_table_to_csv(const NdSymbolTable& table);

}  // namespace shellrecon
