#include "shellrecon/boundary_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "shellrecon/errors.hpp"

namespace shellrecon {

namespace {

void check_mode(Dimension dim, ModeIndex mode) {
  if (dim == Dimension::Two) {
    if (mode.m != 0) throw IndexError("BoundaryData: 2-D modes carry no m index");
    return;
  }
  if (mode.n < 0) throw IndexError("BoundaryData: 3-D mode n must be >= 0");
  if (std::abs(mode.m) > mode.n) {
    throw IndexError("BoundaryData: |m| > n in mode (" + std::to_string(mode.n) + ", " +
                     std::to_string(mode.m) + ")");
  }
}

void check_compatible(const BoundaryData& a, const BoundaryData& b) {
  if (a.dimension != b.dimension || a.basis != b.basis) {
    throw DomainError("BoundaryData: mismatched dimension or basis");
  }
}

}  // namespace

void BoundaryData::set(ModeIndex mode, std::complex<double> value) {
  check_mode(dimension, mode);
  coefficients[mode] = value;
}

std::complex<double> BoundaryData::get(ModeIndex mode) const {
  const auto it = coefficients.find(mode);
  return it == coefficients.end() ? std::complex<double>{} : it->second;
}

void BoundaryData::validate() const {
  const Basis expected = dimension == Dimension::Two ? Basis::Fourier : Basis::SphericalHarmonic;
  if (basis != expected) throw DomainError("BoundaryData: basis does not match dimension");
  for (const auto& [mode, value] : coefficients) {
    check_mode(dimension, mode);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw DomainError("BoundaryData: non-finite coefficient");
    }
  }
}

bool BoundaryData::is_conjugate_symmetric(double tol) const {
  for (const auto& [mode, value] : coefficients) {
    const ModeIndex mirror = dimension == Dimension::Two ? ModeIndex{-mode.n, 0}
                                                         : ModeIndex{mode.n, -mode.m};
    const std::complex<double> other = get(mirror);
    const double scale = std::max({1.0, std::abs(value), std::abs(other)});
    if (std::abs(value - std::conj(other)) > tol * scale) return false;
  }
  return true;
}

std::complex<double> BoundaryData::evaluate(double phi, double theta) const {
  std::complex<double> sum{};
  const double mu = std::cos(theta);
  for (const auto& [mode, value] : coefficients) {
    const int angular = dimension == Dimension::Two ? mode.n : mode.m;
    std::complex<double> term = value * std::polar(1.0, angular * phi);
    if (dimension == Dimension::Three) term *= assoc_legendre(mode.n, mode.m, mu);
    sum += term;
  }
  return sum;
}

BoundaryData operator+(const BoundaryData& a, const BoundaryData& b) {
  check_compatible(a, b);
  BoundaryData out = a;
  for (const auto& [mode, value] : b.coefficients) out.coefficients[mode] += value;
  return out;
}

BoundaryData operator*(std::complex<double> s, const BoundaryData& a) {
  BoundaryData out = a;
  for (auto& entry : out.coefficients) entry.second *= s;
  return out;
}

double spherical_norm_squared(int n, int m) {
  const int am = std::abs(m);
  if (am > n) throw IndexError("spherical_norm_squared: |m| > n");
  // (n+|m|)!/(n-|m|)! via lgamma for large n
  const double log_ratio = std::lgamma(n + am + 1.0) - std::lgamma(n - am + 1.0);
  return 2.0 * std::numbers::pi * 2.0 / (2.0 * n + 1.0) * std::exp(log_ratio);
}

GaussLegendre gauss_legendre(int points) {
  if (points < 1) throw DomainError("gauss_legendre: need at least one node");
  GaussLegendre rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= points; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = points * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[points - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[points - 1 - i] = w;
  }
  return rule;
}

BoundaryData project_fourier(const std::function<std::complex<double>(double)>& g, int n_max,
                             int phi_points) {
  if (n_max < 0 || phi_points < 1) throw DomainError("project_fourier: bad truncation");
  std::vector<std::complex<double>> samples(phi_points);
  for (int j = 0; j < phi_points; ++j) samples[j] = g(2.0 * std::numbers::pi * j / phi_points);
  BoundaryData out = BoundaryData::fourier();
  for (int n = -n_max; n <= n_max; ++n) {
    std::complex<double> c{};
    for (int j = 0; j < phi_points; ++j) {
      c += samples[j] * std::polar(1.0, -2.0 * std::numbers::pi * n * j / phi_points);
    }
    out.coefficients[{n, 0}] = c / static_cast<double>(phi_points);
  }
  return out;
}

BoundaryData project_spherical(const std::function<std::complex<double>(double, double)>& g,
                               int n_max, int phi_points, int mu_points) {
  if (n_max < 0 || phi_points < 1 || mu_points < 1) {
    throw DomainError("project_spherical: bad truncation");
  }
  const GaussLegendre rule = gauss_legendre(mu_points);
  // Fourier coefficients in phi at every mu node: c[m][k]
  std::map<int, std::vector<std::complex<double>>> by_m;
  for (int m = -n_max; m <= n_max; ++m) by_m[m].assign(mu_points, {});
  for (int k = 0; k < mu_points; ++k) {
    const double theta = std::acos(rule.nodes[k]);
    for (int j = 0; j < phi_points; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / phi_points;
      const std::complex<double> v = g(phi, theta);
      for (int m = -n_max; m <= n_max; ++m) by_m[m][k] += v * std::polar(1.0, -m * phi);
    }
  }
  const double dphi = 2.0 * std::numbers::pi / phi_points;
  BoundaryData out = BoundaryData::spherical();
  for (int m = -n_max; m <= n_max; ++m) {
    std::vector<std::complex<double>> acc(n_max + 1);
    for (int k = 0; k < mu_points; ++k) {
      const std::vector<double> column = assoc_legendre_column(n_max, m, rule.nodes[k]);
      for (int n = std::abs(m); n <= n_max; ++n) {
        acc[n] += rule.weights[k] * column[n] * by_m[m][k] * dphi;
      }
    }
    for (int n = std::abs(m); n <= n_max; ++n) {
      out.coefficients[{n, m}] = acc[n] / spherical_norm_squared(n, m);
    }
  }
  return out;
}

}  // namespace shellrecon
