#include "shellrecon/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "mode_data.hpp"
#include "shellrecon/errors.hpp"
#include "shellrecon/format.hpp"
#include "shellrecon/forward.hpp"
#include "shellrecon/nd_map.hpp"
#include "shellrecon/parallel.hpp"

namespace shellrecon {

namespace {

constexpr double kMinAmplitude = 1e-12;

int radial_index(Dimension dim, ModeIndex mode) {
  return dim == Dimension::Two ? std::abs(mode.n) : mode.n;
}

std::string mode_name(Dimension dim, ModeIndex mode) {
  if (dim == Dimension::Two) return "n=" + std::to_string(mode.n);
  return "(n=" + std::to_string(mode.n) + ", m=" + std::to_string(mode.m) + ")";
}

struct RootSolve {
  double eta = 1.0;
  double lo = 1.0;
  double hi = 1.0;
  double residual = 0.0;
};

// Solves core_admittance_offset(eta^2) = offset for eta; the left side is strictly increasing.
RootSolve solve_eta(Dimension dim, int n, double r1, double offset, const RecoveryOptions& opt) {
  auto g = [&](double eta) { return core_admittance_offset(dim, n, r1, eta * eta) - offset; };
  const int points = std::max(opt.prescan_points, 2);
  const double log_lo = std::log(opt.eta_min);
  const double step = (std::log(opt.eta_max) - log_lo) / (points - 1);

  double lo = opt.eta_min;
  double g_lo = g(lo);
  if (g_lo > 0.0) {
    throw InconsistentMeasurementError("bracket failure: target below F(eta_min) for mode " +
                                       std::to_string(n));
  }
  double hi = lo;
  double g_hi = g_lo;
  bool found = g_lo == 0.0;
  for (int k = 1; k < points && !found; ++k) {
    hi = k == points - 1 ? opt.eta_max : std::exp(log_lo + k * step);
    g_hi = g(hi);
    if (g_hi >= 0.0) {
      found = true;
    } else {
      lo = hi;
      g_lo = g_hi;
    }
  }
  if (!found) {
    throw InconsistentMeasurementError("bracket failure: target above F(eta_max) for mode " +
                                       std::to_string(n));
  }
  if (g_lo == 0.0) return {lo, lo, lo, 0.0};

  while (hi / lo - 1.0 > 1e-14) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    const double g_mid = g(mid);
    if (g_mid == 0.0) return {mid, mid, mid, 0.0};
    if (g_mid < 0.0) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
      g_hi = g_mid;
    }
  }

  RootSolve out{std::fabs(g_lo) <= std::fabs(g_hi) ? lo : hi, lo, hi,
                std::min(std::fabs(g_lo), std::fabs(g_hi))};
  if (g_hi != g_lo) {
    const double secant = lo - g_lo * (hi - lo) / (g_hi - g_lo);
    if (secant >= lo && secant <= hi) {
      const double r = std::fabs(g(secant));
      if (r <= out.residual) {
        out.eta = secant;
        out.residual = r;
      }
    }
  }
  return out;
}

// |lambda| / (sigma |d lambda/d sigma|) by central differences of the symbol offset.
double condition_number(const ShellConfig& config, int n) {
  const double h = 1e-5;
  ShellConfig up = config;
  ShellConfig down = config;
  up.sigma1 = config.sigma1 * (1.0 + h);
  down.sigma1 = config.sigma1 * (1.0 - h);
  const double slope = (symbol_offset(up, n) - symbol_offset(down, n)) / (2.0 * h * config.sigma1);
  const double lambda = nd_symbol(config, n);
  if (slope == 0.0) return std::numeric_limits<double>::infinity();
  return std::fabs(lambda) / (config.sigma1 * std::fabs(slope));
}

struct ModeSolve {
  PerModeEstimate estimate;
  RootSolve root;
};

ModeSolve solve_mode(Dimension dim, ModeIndex mode, double lambda, double r1,
                     const RecoveryOptions& options) {
  const int n = radial_index(dim, mode);
  ModeSolve out;
  out.estimate.mode = mode;
  out.estimate.lambda = lambda;
  const double offset = target_offset_from_symbol(dim, n, r1, lambda);
  out.root = solve_eta(dim, n, r1, offset, options);
  out.estimate.sigma1 = out.root.eta * out.root.eta;
  out.estimate.residual = out.root.residual;
  out.estimate.condition = condition_number({dim, r1, out.estimate.sigma1}, n);
  return out;
}

}  // namespace

void Measurement::validate() const {
  neumann.validate();
  dirichlet.validate();
  if (neumann.dimension != dirichlet.dimension || neumann.basis != dirichlet.basis) {
    throw DomainError("Measurement: Neumann and Dirichlet data differ in dimension or basis");
  }
}

Measurement Measurement::synthesize(const ShellConfig& config, const BoundaryData& g) {
  return {g, dirichlet_trace(config, g)};
}

double monotone_f(Order order, double r, double eta, double alpha) {
  if (!(r > 0.0) || !(eta > 0.0)) throw DomainError("monotone_f: r and eta must be positive");
  const BesselLog b = bessel_log(order, r / eta);
  return std::pow(eta, alpha) * b.i_logderiv;
}

double target_offset_from_symbol(Dimension dim, int n, double r1, double lambda) {
  const detail::ModeData m = detail::mode_data({dim, r1, 1.0}, n);
  const double lambda_ref = reference_symbol(dim, n);
  const double a = 1.0 + m.s * lambda;
  if (!(std::fabs(a) > 1e-12) || !std::isfinite(lambda)) {
    throw IllPosedModeError("target extraction: symbol has no finite Bessel-variable ratio");
  }
  // mu - mu_ref, mu = f(1)/f'(1) = lambda/(1 + s lambda)
  const double delta = (lambda - lambda_ref) / (a * (1.0 + m.s * lambda_ref));
  if (delta == 0.0) return 0.0;
  const double i1 = m.at_one.i_logderiv;
  const double qw = m.q * (i1 - m.at_one.k_logderiv) / i1;
  const double den = qw + delta * m.cp.d10_hat;
  const double num = delta * i1 * (m.at_r1.k_logderiv - m.at_r1.i_logderiv);
  if (!(std::fabs(den) > 1e-12 * (std::fabs(qw) + std::fabs(delta * m.cp.d10_hat)))) {
    throw IllPosedModeError("target extraction: degenerate Moebius inversion at mode " +
                            std::to_string(n));
  }
  return num / den;
}

double target_from_symbol(Dimension dim, int n, double r1, double lambda) {
  const double offset = target_offset_from_symbol(dim, n, r1, lambda);
  const double t = core_admittance(dim, n, r1, 1.0) + offset;
  if (!(t > 0.0)) {
    throw InconsistentMeasurementError("target extraction: t = " + format_double(t) +
                                       " is not positive at mode " + std::to_string(n));
  }
  return t;
}

double target_from_measurement(const Measurement& meas, ModeIndex mode, double r1) {
  meas.validate();
  const std::complex<double> g = meas.neumann.get(mode);
  if (!(std::abs(g) > kMinAmplitude)) {
    throw IllPosedModeError("target extraction: Neumann amplitude of mode " +
                            mode_name(meas.dimension(), mode) + " is zero");
  }
  const std::complex<double> lambda = meas.dirichlet.get(mode) / g;
  if (std::fabs(lambda.imag()) > 1e-8 * std::max(1.0, std::abs(lambda))) {
    throw InconsistentMeasurementError("target extraction: complex ratio at mode " +
                                       mode_name(meas.dimension(), mode));
  }
  return target_from_symbol(meas.dimension(), radial_index(meas.dimension(), mode), r1,
                            lambda.real());
}

BoundaryData add_noise(const BoundaryData& data, const NoiseOptions& noise) {
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  BoundaryData out = data;
  for (auto& entry : out.coefficients) entry.second *= 1.0 + noise.stddev * normal(rng);
  return out;
}

RecoveryResult recover_sigma(const Measurement& meas_in, double r1,
                             const RecoveryOptions& options) {
  meas_in.validate();
  if (!(r1 > 0.0 && r1 < 1.0)) throw DomainError("recover_sigma: r1 must lie in (0, 1)");
  Measurement meas = meas_in;
  if (options.noise) meas.dirichlet = add_noise(meas.dirichlet, *options.noise);
  const Dimension dim = meas.dimension();

  // candidate modes, strongest first
  struct Candidate {
    ModeIndex mode;
    double amplitude;
    double lambda;
  };
  std::vector<Candidate> candidates;
  for (const auto& [mode, g] : meas.neumann.coefficients) {
    if (!(std::abs(g) > kMinAmplitude)) continue;
    if (options.mode && !(mode == *options.mode)) continue;
    const std::complex<double> d = meas.dirichlet.get(mode);
    if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) continue;
    const std::complex<double> lambda = d / g;
    if (std::fabs(lambda.imag()) > 1e-8 * std::max(1.0, std::abs(lambda))) {
      throw InconsistentMeasurementError("recover_sigma: complex Dirichlet/Neumann ratio at " +
                                         mode_name(dim, mode));
    }
    candidates.push_back({mode, std::abs(g), lambda.real()});
  }
  if (candidates.empty()) {
    throw IllPosedModeError(options.mode ? "recover_sigma: requested mode is not usable"
                                         : "recover_sigma: no mode with nonzero Neumann data");
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.amplitude > b.amplitude; });

  RecoveryResult result;
  std::optional<ModeSolve> primary;
  std::size_t primary_index = 0;
  std::vector<PerModeEstimate> estimates;
  for (std::size_t k = 0; k < candidates.size() && !primary; ++k) {
    const Candidate& c = candidates[k];
    try {
      ModeSolve s = solve_mode(dim, c.mode, c.lambda, r1, options);
      if (s.estimate.condition < options.condition_limit) {
        s.estimate.usable = true;
        primary = s;
        primary_index = k;
      } else {
        s.estimate.note = "condition number above limit";
        estimates.push_back(s.estimate);
      }
    } catch (const IllPosedModeError& e) {
      PerModeEstimate est;
      est.mode = c.mode;
      est.lambda = c.lambda;
      est.sigma1 = std::numeric_limits<double>::quiet_NaN();
      est.condition = std::numeric_limits<double>::infinity();
      est.note = e.what();
      estimates.push_back(est);
    }
  }
  if (!primary) throw IllPosedModeError("recover_sigma: no well-conditioned mode");

  result.sigma1 = primary->estimate.sigma1;
  result.mode_used = primary->estimate.mode;
  result.residual = primary->root.residual;
  result.bracket = {primary->root.lo * primary->root.lo, primary->root.hi * primary->root.hi};
  estimates.push_back(primary->estimate);

  if (options.cross_validate) {
    std::vector<Candidate> rest(candidates.begin() + primary_index + 1, candidates.end());
    std::vector<PerModeEstimate> others(rest.size());
    parallel_for(rest.size(), [&](std::size_t k) {
      const Candidate& c = rest[k];
      PerModeEstimate& est = others[k];
      est.mode = c.mode;
      est.lambda = c.lambda;
      est.sigma1 = std::numeric_limits<double>::quiet_NaN();
      const int n = radial_index(dim, c.mode);
      est.condition = condition_number({dim, r1, result.sigma1}, n);
      est.usable = est.condition < options.condition_limit;
      try {
        const ModeSolve s = solve_mode(dim, c.mode, c.lambda, r1, options);
        est.sigma1 = s.estimate.sigma1;
        est.residual = s.estimate.residual;
      } catch (const Error& e) {
        est.note = e.what();
      }
    });
    for (const PerModeEstimate& est : others) {
      if (est.usable) {
        if (!std::isfinite(est.sigma1)) {
          throw InconsistentMeasurementError("recover_sigma: mode " + mode_name(dim, est.mode) +
                                             " cannot be inverted: " + est.note);
        }
        const double gap = std::fabs(est.sigma1 - result.sigma1) / result.sigma1;
        if (gap > options.agreement_tol) {
          throw InconsistentMeasurementError(
              "recover_sigma: mode " + mode_name(dim, est.mode) + " gives sigma1 = " +
              format_double(est.sigma1) + " but mode " + mode_name(dim, result.mode_used) +
              " gives " + format_double(result.sigma1));
        }
      }
      estimates.push_back(est);
    }
  }
  std::sort(estimates.begin(), estimates.end(),
            [](const PerModeEstimate& a, const PerModeEstimate& b) { return a.mode < b.mode; });
  result.per_mode = std::move(estimates);
  return result;
}

double nonuniq_determinant(const ShellConfig& config_a, double r2, double sigma2, int n) {
  config_a.validate();
  const ShellConfig config_b{config_a.dimension, r2, sigma2};
  config_b.validate();
  const Order order = mode_order(config_a.dimension, n);
  const CrossProductValues cp = cross_products(order, config_a.r1, r2);
  const double t1 = core_admittance(config_a.dimension, n, config_a.r1, config_a.sigma1);
  const double t2 = core_admittance(config_a.dimension, n, r2, sigma2);
  const double det =
      cp.d11_hat - t2 * cp.d10_hat - t1 * cp.d01_hat + t1 * t2 * cp.d_hat;
  const double row1 = std::hypot(cp.d10_hat, t1, cp.d11_hat);
  const double row2 = std::hypot(1.0, t2);
  const double row3 = std::hypot(cp.d_hat, 1.0, cp.d01_hat);
  return det / (row1 * row2 * row3);
}

std::vector<NonuniqPair> find_nonuniq_pairs(const ShellConfig& config_a, double r2, int n,
                                            const NonuniqOptions& options) {
  config_a.validate();
  if (!(r2 > 0.0 && r2 < 1.0)) throw DomainError("find_nonuniq_pairs: r2 must lie in (0, 1)");
  if (!(options.sigma2_min > 0.0 && options.sigma2_max > options.sigma2_min)) {
    throw DomainError("find_nonuniq_pairs: bad sigma2 range");
  }
  const int points = std::max(options.scan_points, 2);
  const double log_lo = std::log(options.sigma2_min);
  const double step = (std::log(options.sigma2_max) - log_lo) / (points - 1);
  std::vector<double> grid(points);
  std::vector<double> dets(points);
  for (int k = 0; k < points; ++k) grid[k] = std::exp(log_lo + k * step);
  grid.front() = options.sigma2_min;
  grid.back() = options.sigma2_max;
  parallel_for(grid.size(), [&](std::size_t k) {
    dets[k] = nonuniq_determinant(config_a, r2, grid[k], n);
  });

  auto det = [&](double s) { return nonuniq_determinant(config_a, r2, s, n); };
  std::vector<double> roots;
  for (int k = 0; k + 1 < points; ++k) {
    if (dets[k] == 0.0) {
      roots.push_back(grid[k]);
      continue;
    }
    if (k + 2 == points && dets[k + 1] == 0.0) roots.push_back(grid[k + 1]);
    if ((dets[k] < 0.0) == (dets[k + 1] < 0.0) || dets[k + 1] == 0.0) continue;
    double lo = grid[k];
    double hi = grid[k + 1];
    double d_lo = dets[k];
    double d_hi = dets[k + 1];
    for (int iter = 0; iter < 200 && hi / lo - 1.0 > 1e-15; ++iter) {
      const double mid = std::sqrt(lo * hi);
      if (mid <= lo || mid >= hi) break;
      const double d_mid = det(mid);
      if (d_mid == 0.0) {
        lo = hi = mid;
        d_lo = d_hi = 0.0;
        break;
      }
      if ((d_mid < 0.0) == (d_lo < 0.0)) {
        lo = mid;
        d_lo = d_mid;
      } else {
        hi = mid;
        d_hi = d_mid;
      }
    }
    roots.push_back(std::fabs(d_lo) <= std::fabs(d_hi) ? lo : hi);
  }
  if (roots.empty()) {
    throw NoRootError("find_nonuniq_pairs: no sign change of the determinant for sigma2 in [" +
                      format_double(options.sigma2_min) + ", " +
                      format_double(options.sigma2_max) + "]");
  }
  std::sort(roots.begin(), roots.end());

  std::vector<NonuniqPair> pairs(roots.size());
  parallel_for(roots.size(), [&](std::size_t k) {
    NonuniqPair& p = pairs[k];
    p.config_a = config_a;
    p.config_b = {config_a.dimension, r2, roots[k]};
    p.mode_n = n;
    p.det_residual = std::fabs(det(roots[k]));
    p.symbol_gap = std::fabs(symbol_offset(p.config_a, n) - symbol_offset(p.config_b, n));
    p.verified = p.det_residual <= options.tolerance && p.symbol_gap <= options.tolerance;
    for (int j = 0; j <= options.diagnostic_modes; ++j) {
      p.cross_mode_gaps.emplace_back(
          j, std::fabs(symbol_offset(p.config_a, j) - symbol_offset(p.config_b, j)));
    }
  });
  return pairs;
}

PotentialReport potential_report(double sigma1, double e_tilde) {
  if (!(sigma1 > 0.0) || !std::isfinite(sigma1)) {
    throw DomainError("potential_report: sigma1 must be positive");
  }
  return {sigma1, e_tilde, e_tilde + 1.0 / sigma1, e_tilde + 1.0};
}

}  // namespace shellrecon
