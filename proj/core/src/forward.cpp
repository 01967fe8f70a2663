#include "shellrecon/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mode_data.hpp"
#include "shellrecon/errors.hpp"
#include "shellrecon/nd_map.hpp"
#include "shellrecon/parallel.hpp"

namespace shellrecon {

namespace {

constexpr double kSmallRadius = 1e-8;

int radial_index(Dimension dim, ModeIndex mode) {
  return dim == Dimension::Two ? std::abs(mode.n) : mode.n;
}

// e^{log_mag} * c, failing loudly instead of returning inf.
std::complex<double> scaled(std::complex<double> c, double log_mag, const char* what, int n) {
  if (c == std::complex<double>{}) return c;
  const double total = log_mag + std::log(std::abs(c));
  if (total > 709.0) {
    throw RangeError(std::string("solve_coefficients: ") + what + " overflows at mode " +
                     std::to_string(n));
  }
  return (c / std::abs(c)) * std::exp(total);
}

ModeCoefficients solve_mode(const ShellConfig& config, ModeIndex mode, std::complex<double> g) {
  const int n = radial_index(config.dimension, mode);
  const detail::ModeData m = detail::mode_data(config, n);

  const double t_minus_k = m.t - m.at_r1.k_logderiv;
  if (!(t_minus_k > 0.0)) {
    throw DegeneracyError("solve_coefficients: degenerate interface at mode " +
                          std::to_string(n));
  }
  const double rho_hat = m.t_offset / t_minus_k;
  // I(1)^{-1} times the Neumann denominator (I'(1) - s I(1)) - rho (K'(1) - s K(1))
  const double den = (m.at_one.i_logderiv - m.s) - rho_hat * m.q * (m.at_one.k_logderiv - m.s);
  if (!(std::fabs(den) > 1e-300) || !std::isfinite(den)) {
    throw DegeneracyError("solve_coefficients: Neumann resonance at mode " + std::to_string(n));
  }

  const double log_v = -m.at_one.log_i() - std::log(std::fabs(den));
  const std::complex<double> g_signed = den < 0.0 ? -g : g;

  ModeCoefficients c;
  c.mode = mode;
  c.v = scaled(g_signed, log_v, "v", n);
  // w = -rho v, rho = rho_hat I(r1)/K(r1)
  c.w = scaled(-rho_hat * g_signed, log_v + m.at_r1.log_i() - m.at_r1.log_k(), "w", n);
  // u = v I(r1) (1 - rho_hat) / I(r1/sqrt(sigma1)); 1 - rho_hat = (i'(r1) - k'(r1))/(t - k'(r1))
  const BesselLog core = bessel_log(m.order, config.r1 / std::sqrt(config.sigma1));
  const double one_minus_rho = (m.at_r1.i_logderiv - m.at_r1.k_logderiv) / t_minus_k;
  c.u = scaled(one_minus_rho * g_signed, log_v + m.at_r1.log_i() - core.log_i(), "u", n);
  return c;
}

struct Radial {
  std::complex<double> value;
  std::complex<double> derivative;
};

// r^{-s} Z(k r) and its r-derivative from Z(x) and Z'(x) = Z(x) * logderiv.
Radial power_times(std::complex<double> coeff, double log_z, double logderiv, double kappa,
                   double r, double s) {
  const std::complex<double> value = coeff * std::exp(log_z - s * std::log(r));
  return {value, value * (kappa * logderiv - s / r)};
}

Radial core_radial(const ShellConfig& config, const ModeCoefficients& c, double r) {
  const Order order = mode_order(config.dimension, radial_index(config.dimension, c.mode));
  const double s = radial_shift(config.dimension);
  const double kappa = 1.0 / std::sqrt(config.sigma1);
  const double nu = order.nu();
  if (r < kSmallRadius) {
    // u r^{-s} (kappa r / 2)^nu / Gamma(nu + 1)
    const double p = nu - s;
    const std::complex<double> lead =
        c.u * std::exp(nu * std::log(kappa / 2.0) - std::lgamma(nu + 1.0));
    if (r == 0.0) {
      const std::complex<double> zero{};
      return {p == 0.0 ? lead : zero, p == 1.0 ? lead : zero};
    }
    const std::complex<double> value = lead * std::pow(r, p);
    return {value, p == 0.0 ? std::complex<double>{} : value * (p / r)};
  }
  if (c.u == std::complex<double>{}) return {};
  const BesselLog b = bessel_log(order, kappa * r);
  return power_times(c.u, b.log_i(), b.i_logderiv, kappa, r, s);
}

Radial shell_radial(const ShellConfig& config, const ModeCoefficients& c, double r) {
  if (!(r > 0.0)) throw DomainError("evaluate_wave: shell branch needs r > 0");
  const Order order = mode_order(config.dimension, radial_index(config.dimension, c.mode));
  const double s = radial_shift(config.dimension);
  const BesselLog b = bessel_log(order, r);
  Radial out{};
  if (c.v != std::complex<double>{}) {
    const Radial a = power_times(c.v, b.log_i(), b.i_logderiv, 1.0, r, s);
    out.value += a.value;
    out.derivative += a.derivative;
  }
  if (c.w != std::complex<double>{}) {
    const Radial k = power_times(c.w, b.log_k(), b.k_logderiv, 1.0, r, s);
    out.value += k.value;
    out.derivative += k.derivative;
  }
  return out;
}

std::complex<double> angular(Dimension dim, ModeIndex mode, double phi, double theta) {
  if (dim == Dimension::Two) return std::polar(1.0, mode.n * phi);
  return assoc_legendre(mode.n, mode.m, std::cos(theta)) * std::polar(1.0, mode.m * phi);
}

}  // namespace

WaveCoefficients solve_coefficients(const ShellConfig& config, const BoundaryData& g) {
  config.validate();
  g.validate();
  if (g.dimension != config.dimension) {
    throw DomainError("solve_coefficients: boundary data dimension differs from config");
  }
  WaveCoefficients out;
  out.config = config;
  std::vector<std::pair<ModeIndex, std::complex<double>>> entries(g.coefficients.begin(),
                                                                  g.coefficients.end());
  out.modes.resize(entries.size());
  parallel_for(entries.size(), [&](std::size_t k) {
    out.modes[k] = solve_mode(config, entries[k].first, entries[k].second);
  });
  return out;
}

std::array<double, 3> system_residuals(const ShellConfig& config, const ModeCoefficients& c,
                                       std::complex<double> g) {
  const int n = radial_index(config.dimension, c.mode);
  const Order order = mode_order(config.dimension, n);
  const double s = radial_shift(config.dimension);
  const double root = std::sqrt(config.sigma1);
  const BesselPair core = bessel_pair(order, config.r1 / root);
  const BesselPair at_r1 = bessel_pair(order, config.r1);
  const BesselPair at_one = bessel_pair(order, 1.0);

  auto relative = [](std::initializer_list<std::complex<double>> terms) {
    std::complex<double> sum{};
    double largest = 0.0;
    for (const auto& t : terms) {
      sum += t;
      largest = std::max(largest, std::abs(t));
    }
    return largest > 0.0 ? std::abs(sum) / largest : 0.0;
  };

  const double b = root * core.i_deriv + s * (1.0 - config.sigma1) / config.r1 * core.i_val;
  return {
      relative({c.u * core.i_val, -c.v * at_r1.i_val, -c.w * at_r1.k_val}),
      relative({c.u * b, -c.v * at_r1.i_deriv, -c.w * at_r1.k_deriv}),
      relative({c.v * (at_one.i_deriv - s * at_one.i_val),
                c.w * (at_one.k_deriv - s * at_one.k_val), -g}),
  };
}

std::vector<WaveSample> evaluate_wave(const WaveCoefficients& coeffs, const EvaluationGrid& grid,
                                      Branch branch) {
  const ShellConfig& config = coeffs.config;
  config.validate();
  for (const GridPoint& p : grid) {
    if (!(p.r >= 0.0 && p.r <= 1.0)) throw DomainError("evaluate_wave: r must lie in [0, 1]");
    if (config.dimension == Dimension::Three && !(p.theta >= 0.0 && p.theta <= std::numbers::pi)) {
      throw DomainError("evaluate_wave: theta must lie in [0, pi]");
    }
  }
  std::vector<WaveSample> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    const GridPoint& p = grid[k];
    const bool use_core =
        branch == Branch::Core || (branch == Branch::Auto && p.r < config.r1);
    WaveSample sample{};
    for (const ModeCoefficients& c : coeffs.modes) {
      const Radial rad = use_core ? core_radial(config, c, p.r) : shell_radial(config, c, p.r);
      const std::complex<double> ang = angular(config.dimension, c.mode, p.phi, p.theta);
      sample.value += rad.value * ang;
      sample.radial_derivative += rad.derivative * ang;
    }
    out[k] = sample;
  });
  return out;
}

BoundaryData dirichlet_trace(const ShellConfig& config, const BoundaryData& g) {
  config.validate();
  g.validate();
  if (g.dimension != config.dimension) {
    throw DomainError("dirichlet_trace: boundary data dimension differs from config");
  }
  std::vector<std::pair<ModeIndex, std::complex<double>>> entries(g.coefficients.begin(),
                                                                  g.coefficients.end());
  std::vector<std::complex<double>> values(entries.size());
  parallel_for(entries.size(), [&](std::size_t k) {
    const int n = radial_index(config.dimension, entries[k].first);
    values[k] = nd_symbol(config, n) * entries[k].second;
  });
  BoundaryData out = BoundaryData::empty_like(config.dimension);
  for (std::size_t k = 0; k < entries.size(); ++k) out.coefficients[entries[k].first] = values[k];
  return out;
}

}  // namespace shellrecon
