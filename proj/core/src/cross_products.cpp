#include "shellrecon/cross_products.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shellrecon/errors.hpp"

namespace shellrecon {

double CrossProductValues::unscale(double mantissa) const {
  if (mantissa == 0.0) return 0.0;
  const double v = std::exp(log_scale + std::log(std::fabs(mantissa)));
  if (std::isinf(v)) {
    throw RangeError("cross-product exceeds the double range at order " +
                     std::to_string(order.nu()) + "; use the scaled mantissas");
  }
  return std::copysign(v, mantissa);
}

CrossProductValues cross_products(const BesselLog& at_x, const BesselLog& at_y, Order order) {
  const double x = at_x.x;
  const double y = at_y.x;
  // ln(I(x)K(y)) and ln(K(x)I(y)) with e^{x-y} applied once.
  const double a = (at_x.log_i_scaled + at_y.log_k_scaled) + (x - y);
  const double b = (at_x.log_k_scaled + at_y.log_i_scaled) + (y - x);
  const double scale = std::max(a, b);
  const double ea = std::exp(a - scale);
  const double eb = std::exp(b - scale);

  CrossProductValues out;
  out.order = order;
  out.x = x;
  out.y = y;
  out.log_scale = scale;
  out.d_hat = ea - eb;
  out.d10_hat = ea * at_x.i_logderiv - eb * at_x.k_logderiv;
  out.d01_hat = ea * at_y.k_logderiv - eb * at_y.i_logderiv;
  out.d11_hat = ea * at_x.i_logderiv * at_y.k_logderiv - eb * at_x.k_logderiv * at_y.i_logderiv;
  return out;
}

CrossProductValues cross_products(Order order, double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw DomainError("cross_products: arguments must be positive, got x=" + std::to_string(x) +
                      ", y=" + std::to_string(y));
  }
  const BesselLog bx = bessel_log(order, x);
  if (x == y) return cross_products(bx, bx, order);
  return cross_products(bx, bessel_log(order, y), order);
}

namespace {

// A signed term c * e^{l}.
struct Term {
  double coeff;
  double log;
};

Term product(double c1, double l1, double c2, double l2) { return {c1 * c2, l1 + l2}; }

// Sum of terms brought to the largest log scale; fills residual/scale for slot k.
void assemble(IdentityReport& rep, std::size_t k, std::initializer_list<Term> terms) {
  double top = -INFINITY;
  for (const Term& t : terms) {
    if (t.coeff != 0.0) top = std::max(top, t.log + std::log(std::fabs(t.coeff)));
  }
  if (!std::isfinite(top)) {
    rep.residual[k] = 0.0;
    rep.scale[k] = 0.0;
    rep.log_scale[k] = 0.0;
    return;
  }
  double sum = 0.0;
  double largest = 0.0;
  for (const Term& t : terms) {
    const double v = t.coeff * std::exp(t.log - top);
    sum += v;
    largest = std::max(largest, std::fabs(v));
  }
  rep.residual[k] = sum;
  rep.scale[k] = largest;
  rep.log_scale[k] = top;
}

}  // namespace

double IdentityReport::max_relative() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < residual.size(); ++k) {
    if (scale[k] > 0.0) worst = std::max(worst, std::fabs(residual[k]) / scale[k]);
  }
  return worst;
}

IdentityReport check_identities(Order order, double x, double y, double z) {
  if (!(x > 0.0) || !(y > 0.0) || !(z > 0.0)) {
    throw DomainError("check_identities: arguments must be positive");
  }
  const BesselLog bx = bessel_log(order, x);
  const BesselLog by = bessel_log(order, y);
  const BesselLog bz = bessel_log(order, z);

  const CrossProductValues xx = cross_products(bx, bx, order);
  const CrossProductValues xy = cross_products(bx, by, order);
  const CrossProductValues yx = cross_products(by, bx, order);
  const CrossProductValues xz = cross_products(bx, bz, order);
  const CrossProductValues zy = cross_products(bz, by, order);
  const double inv_x = 1.0 / x;

  IdentityReport rep;
  assemble(rep, 0, {{xx.d10_hat, xx.log_scale}, {-inv_x, 0.0}});
  assemble(rep, 1, {{xy.d01_hat, xy.log_scale}, {yx.d10_hat, yx.log_scale}});
  assemble(rep, 2,
           {product(xy.d_hat, xy.log_scale, xz.d10_hat, xz.log_scale),
            product(-xz.d_hat, xz.log_scale, xy.d10_hat, xy.log_scale),
            {-inv_x * zy.d_hat, zy.log_scale}});
  assemble(rep, 3,
           {product(xy.d_hat, xy.log_scale, xz.d11_hat, xz.log_scale),
            product(-xz.d01_hat, xz.log_scale, xy.d10_hat, xy.log_scale),
            {-inv_x * zy.d10_hat, zy.log_scale}});
  assemble(rep, 4,
           {product(xy.d11_hat, xy.log_scale, xz.d01_hat, xz.log_scale),
            product(-xy.d01_hat, xy.log_scale, xz.d11_hat, xz.log_scale),
            {inv_x * zy.d11_hat, zy.log_scale}});
  return rep;
}

}  // namespace shellrecon
