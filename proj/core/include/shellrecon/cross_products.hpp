#pragma once

#include <array>

#include "shellrecon/special_fn.hpp"

namespace shellrecon {

/// D(x,y) = I_nu(x) K_nu(y) - K_nu(x) I_nu(y) and its first partials, stored as
/// mantissas relative to a common factor e^{log_scale}.
///
/// log_scale is the larger of ln(I_nu(x) K_nu(y)) and ln(K_nu(x) I_nu(y)), so the
/// mantissas are O(1) quantities even when the products themselves over- or underflow.
/// Quotients of cross-products at the same (x, y) only ever need the mantissas.
struct CrossProductValues {
  Order order = Order::integer(0);
  double x = 0.0;
  double y = 0.0;
  double log_scale = 0.0;
  double d_hat = 0.0;    // D / e^{log_scale}
  double d10_hat = 0.0;  // D_{1,0} / e^{log_scale}
  double d01_hat = 0.0;  // D_{0,1} / e^{log_scale}
  double d11_hat = 0.0;  // D_{1,1} / e^{log_scale}

  /// Unscaled values; RangeError when they do not fit in a double.
  double d() const { return unscale(d_hat); }
  double d10() const { return unscale(d10_hat); }
  double d01() const { return unscale(d01_hat); }
  double d11() const { return unscale(d11_hat); }

 private:
  double unscale(double mantissa) const;
};

CrossProductValues cross_products(Order order, double x, double y);

/// Same, reusing Bessel evaluations the caller already holds (both at the same order).
CrossProductValues cross_products(const BesselLog& at_x, const BesselLog& at_y, Order order);

/// Residuals of the five cross-product identities at (x, y, z):
///   [0] D_{1,0}(x,x) - 1/x
///   [1] D_{0,1}(x,y) + D_{1,0}(y,x)
///   [2] D(x,y) D_{1,0}(x,z) - D(x,z) D_{1,0}(x,y) - D(z,y)/x
///   [3] D(x,y) D_{1,1}(x,z) - D_{0,1}(x,z) D_{1,0}(x,y) - D_{1,0}(z,y)/x
///   [4] D_{1,1}(x,y) D_{0,1}(x,z) - D_{0,1}(x,y) D_{1,1}(x,z) + D_{1,1}(z,y)/x
/// Each residual is reported alongside the magnitude of its largest term. All terms of
/// one identity are brought to a common scale before subtraction, so the relative
/// residual stays meaningful where the individual products overflow.
struct IdentityReport {
  std::array<double, 5> residual{};   // in units of e^{log_scale[k]}
  std::array<double, 5> scale{};      // largest |term|, same units
  std::array<double, 5> log_scale{};

  /// max_k |residual_k| / scale_k (0 for identities whose terms all vanish)
  double max_relative() const;
};

IdentityReport check_identities(Order order, double x, double y, double z);

}  // namespace shellrecon
