#include "shellrecon/nd_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "shellrecon/errors.hpp"
#include "shellrecon/format.hpp"
#include "shellrecon/parallel.hpp"
#include "mode_data.hpp"

namespace shellrecon {

namespace {

using detail::ModeData;
using detail::mode_data;

constexpr double kDenominatorFloor = 1e-300;

void check_denominator(double den, const ShellConfig& config, int n, const char* form) {
  if (!(std::fabs(den) >= kDenominatorFloor) || !std::isfinite(den)) {
    std::ostringstream os;
    os << "nd_symbol: degenerate " << form << " denominator at mode " << n
       << " (r1=" << format_double(config.r1) << ", sigma1=" << format_double(config.sigma1)
       << ")";
    throw DegeneracyError(os.str());
  }
}

// Bessel-variable ratio f(1)/f'(1) of the shell solution, from the cross-products.
double shell_ratio(const ModeData& m, const ShellConfig& config, int n) {
  const double num = m.cp.d01_hat - m.t * m.cp.d_hat;
  const double den = m.cp.d11_hat - m.t * m.cp.d10_hat;
  check_denominator(den, config, n, "cross-product");
  return num / den;
}

// psi(1)/psi'(1) from f(1)/f'(1) when psi = r^{-s} f.
double to_symbol(double ratio, double s) { return ratio / (1.0 - s * ratio); }

double rho_normalized(const ModeData& m, const ShellConfig& config, int n) {
  const double den = m.t - m.at_r1.k_logderiv;
  check_denominator(den, config, n, "rho");
  return m.t_offset / den;
}

}  // namespace

double rho(const ShellConfig& config, int n) {
  const ModeData m = mode_data(config, n);
  const double normalized = rho_normalized(m, config, n);
  if (normalized == 0.0) return 0.0;
  // rho = (I(r1)/K(r1)) * normalized
  const double log_ratio = m.at_r1.log_i() - m.at_r1.log_k();
  return std::copysign(std::exp(log_ratio + std::log(std::fabs(normalized))), normalized);
}

double nd_symbol(const ShellConfig& config, int n, SymbolForm form) {
  const ModeData m = mode_data(config, n);
  if (form == SymbolForm::CrossProduct) {
    const double lambda = to_symbol(shell_ratio(m, config, n), m.s);
    check_denominator(1.0 / lambda, config, n, "boundary");
    return lambda;
  }
  // lambda = [I(1) - rho K(1)] / [(I'(1) - s I(1)) - rho (K'(1) - s K(1))], divided by I(1).
  const double rq = rho_normalized(m, config, n) * m.q;
  const double den = (m.at_one.i_logderiv - m.s) - rq * (m.at_one.k_logderiv - m.s);
  check_denominator(den, config, n, "rho-form");
  return (1.0 - rq) / den;
}

double reference_symbol(Dimension dim, int n) {
  const BesselLog b = bessel_log(mode_order(dim, n), 1.0);
  return 1.0 / (b.i_logderiv - radial_shift(dim));
}

double symbol_offset(const ShellConfig& config, int n) {
  const ModeData m = mode_data(config, n);
  if (m.t_offset == 0.0) return 0.0;
  const double i1 = m.at_one.i_logderiv;
  const double den = m.cp.d11_hat - m.t * m.cp.d10_hat;
  check_denominator(den, config, n, "cross-product");
  // f(1)/f'(1) - I(1)/I'(1) = q (t - i'(r1)) (i'(1) - k'(1)) / (den i'(1))
  const double ratio_offset = m.q * m.t_offset * (i1 - m.at_one.k_logderiv) / (den * i1);
  const double ratio = shell_ratio(m, config, n);
  const double ratio_ref = 1.0 / i1;
  return ratio_offset / ((1.0 - m.s * ratio) * (1.0 - m.s * ratio_ref));
}

NdSymbolTable symbol_table(const ShellConfig& config, int n_max) {
  config.validate();
  if (n_max < 0) throw DomainError("symbol_table: n_max must be non-negative");
  NdSymbolTable table;
  table.dimension = config.dimension;
  table.n_max = n_max;
  table.symbols.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  parallel_for(table.symbols.size(), [&](std::size_t n) {
    table.symbols[n] = nd_symbol(config, static_cast<int>(n));
  });
  return table;
}

NdSymbolTable reference_table(Dimension dim, int n_max) {
  if (n_max < 0) throw DomainError("reference_table: n_max must be non-negative");
  NdSymbolTable table;
  table.dimension = dim;
  table.n_max = n_max;
  table.symbols.resize(static_cast<std::size_t>(n_max) + 1);
  parallel_for(table.symbols.size(), [&](std::size_t n) {
    table.symbols[n] = reference_symbol(dim, static_cast<int>(n));
  });
  return table;
}

NdOperator NdOperator::shell(const ShellConfig& config) {
  config.validate();
  return NdOperator(config.dimension, config);
}

double NdOperator::symbol(int n) const {
  return config_ ? nd_symbol(*config_, n) : reference_symbol(dim_, n);
}

double NdOperator::offset(int n) const { return config_ ? symbol_offset(*config_, n) : 0.0; }

namespace {

template <typename Term>
NormResult weighted_sup(const NormOptions& options, Term term) {
  if (options.n_max < 0) throw DomainError("operator norm: n_max must be non-negative");
  std::vector<double> weighted;
  int n_max = options.n_max;
  NormResult result;
  for (;;) {
    const std::size_t old_size = weighted.size();
    weighted.resize(static_cast<std::size_t>(n_max) + 1);
    parallel_for(weighted.size() - old_size, [&](std::size_t k) {
      const int n = static_cast<int>(old_size + k);
      weighted[old_size + k] = sobolev_weight(n) * std::fabs(term(n));
    });

    const int window = std::min<int>(options.tail_window, static_cast<int>(weighted.size()));
    bool decreasing = true;
    for (std::size_t k = weighted.size() - window; k + 1 < weighted.size(); ++k) {
      if (weighted[k + 1] > weighted[k]) decreasing = false;
    }
    result.tail_certified = decreasing;
    result.n_max_used = n_max;
    if (decreasing || !options.auto_extend || n_max >= options.n_cap) break;
    n_max = std::min(std::max(2 * n_max, 1), options.n_cap);
  }

  const auto it = std::max_element(weighted.begin(), weighted.end());
  result.norm = *it;
  result.argmax_mode = static_cast<int>(it - weighted.begin());
  return result;
}

}  // namespace

NormResult operator_norm(const NdOperator& op, const NormOptions& options) {
  return weighted_sup(options, [&](int n) { return op.symbol(n); });
}

NormResult difference_norm(const NdOperator& a, const NdOperator& b, const NormOptions& options) {
  if (a.dimension() != b.dimension()) {
    throw DomainError("difference_norm: operators live in different dimensions");
  }
  return weighted_sup(options, [&](int n) { return a.offset(n) - b.offset(n); });
}

SweepTable norm_sweep(const ShellConfig& base, SweepAxis axis, const std::vector<double>& points,
                      const NormOptions& options) {
  SweepTable table;
  table.axis = axis;
  table.rows.resize(points.size());
  const NdOperator reference = NdOperator::reference(base.dimension);
  parallel_for(points.size(), [&](std::size_t k) {
    ShellConfig cfg = base;
    if (axis == SweepAxis::Sigma1ToOne) {
      cfg.sigma1 = points[k];
    } else {
      cfg.r1 = points[k];
    }
    const NormResult r = difference_norm(NdOperator::shell(cfg), reference, options);
    table.rows[k] = {points[k], r.norm, r.argmax_mode, r.tail_certified};
  });
  table.strictly_decreasing = true;
  table.all_certified = true;
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    if (k > 0 && !(table.rows[k].norm < table.rows[k - 1].norm)) table.strictly_decreasing = false;
    if (!table.rows[k].tail_certified) table.all_certified = false;
  }
  return table;
}

std::string sweep_to_csv(const SweepTable& table) {
  std::string out = "parameter,norm,argmax_mode\n";
  for (const SweepRow& row : table.rows) {
    out += format_double(row.parameter) + "," + format_double(row.norm) + "," +
           std::to_string(row.argmax_mode) + "\n";
  }
  return out;
}

std::string symbol_table_to_csv(const NdSymbolTable& table) {
  std::string out = "n,lambda\n";
  for (std::size_t n = 0; n < table.symbols.size(); ++n) {
    out += std::to_string(n) + "," + format_double(table.symbols[n]) + "\n";
  }
  return out;
}

}  // namespace shellrecon
