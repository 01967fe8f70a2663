#pragma once

#include <cmath>

#include "shellrecon/cross_products.hpp"
#include "shellrecon/shell_config.hpp"

namespace shellrecon::detail {

// Everything the mode-n multiplier needs, evaluated once.
struct ModeData {
  Order order = Order::integer(0);
  double s = 0.0;
  BesselLog at_one;
  BesselLog at_r1;
  CrossProductValues cp;   // at (1, r1); log_scale = ln(I(1) K(r1))
  double q = 0.0;          // K(1) I(r1) / (I(1) K(r1)), in (0, 1)
  double t = 0.0;          // core admittance
  double t_offset = 0.0;   // t - I'(r1)/I(r1)
};

inline ModeData mode_data(const ShellConfig& config, int n) {
  config.validate();
  ModeData m;
  m.order = mode_order(config.dimension, n);
  m.s = radial_shift(config.dimension);
  m.at_one = bessel_log(m.order, 1.0);
  m.at_r1 = bessel_log(m.order, config.r1);
  m.cp = cross_products(m.at_one, m.at_r1, m.order);
  m.q = std::exp((m.at_one.log_k() + m.at_r1.log_i()) - (m.at_one.log_i() + m.at_r1.log_k()));
  m.t = core_admittance(config.dimension, n, config.r1, config.sigma1);
  m.t_offset = core_admittance_offset(config.dimension, n, config.r1, config.sigma1);
  return m;
}

}  // namespace shellrecon::detail
