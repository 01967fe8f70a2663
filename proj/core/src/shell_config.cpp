#include "shellrecon/shell_config.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "shellrecon/errors.hpp"

namespace shellrecon {

void ShellConfig::validate() const {
  if (dimension != Dimension::Two && dimension != Dimension::Three) {
    throw DomainError("ShellConfig: dimension must be 2 or 3");
  }
  if (!(r1 > 0.0 && r1 < 1.0)) {
    throw DomainError("ShellConfig: r1 must lie in (0, 1), got " + std::to_string(r1));
  }
  if (!(sigma1 > 0.0) || !std::isfinite(sigma1)) {
    throw DomainError("ShellConfig: sigma1 must be positive, got " + std::to_string(sigma1));
  }
}

Order mode_order(Dimension dim, int n) {
  const int a = std::abs(n);
  return dim == Dimension::Two ? Order::integer(a) : Order::half_integer(a);
}

double core_admittance(Dimension dim, int n, double r1, double sigma) {
  if (!(sigma > 0.0) || !(r1 > 0.0)) {
    throw DomainError("core_admittance: r1 and sigma must be positive");
  }
  const Order order = mode_order(dim, n);
  const double root = std::sqrt(sigma);
  const int a = std::abs(n);
  return root * bessel_ratio_i(order, r1 / root) + a * sigma / r1 + radial_shift(dim) / r1;
}

double core_admittance_offset(Dimension dim, int n, double r1, double sigma) {
  if (!(sigma > 0.0) || !(r1 > 0.0)) {
    throw DomainError("core_admittance_offset: r1 and sigma must be positive");
  }
  if (sigma == 1.0) return 0.0;
  const Order order = mode_order(dim, n);
  const double root = std::sqrt(sigma);
  const int a = std::abs(n);
  return (root * bessel_ratio_i(order, r1 / root) - bessel_ratio_i(order, r1)) +
         a * (sigma - 1.0) / r1;
}

}  // namespace shellrecon
