#pragma once

#include <compare>
#include <vector>

namespace shellrecon {

/// Order of a modified Bessel function: integer n (2-D modes) or n + 1/2 (3-D modes).
/// Negative integer orders are folded onto |n| by the caller (I_{-n} = I_n, K_{-n} = K_n).
class Order {
 public:
  enum class Kind { Integer, HalfInteger };

  static Order integer(int n);
  static Order half_integer(int n);

  Kind kind() const { return kind_; }
  int index() const { return n_; }
  double nu() const { return kind_ == Kind::Integer ? n_ : n_ + 0.5; }
  Order next() const { return Order(kind_, n_ + 1); }

  bool operator==(const Order&) const = default;

 private:
  Order(Kind kind, int n) : kind_(kind), n_(n) {}

  Kind kind_;
  int n_;
};

enum class Scaling {
  Unscaled,
  /// e^{-x} I, e^{-x} I', e^{x} K, e^{x} K'
  ExpScaled,
};

struct BesselPair {
  double i_val = 0.0;
  double i_deriv = 0.0;
  double k_val = 0.0;
  double k_deriv = 0.0;
  Scaling scale = Scaling::Unscaled;
};

struct ValueDeriv {
  double value = 0.0;
  double derivative = 0.0;
};

/// Log-magnitude form of I_nu(x), K_nu(x) and their logarithmic derivatives.
///
/// This is the representation everything downstream is built on: the values themselves
/// leave the double range for large orders (K_200(1) ~ 1e+400), but the logarithms and
/// the log-derivatives do not. The exponential factors e^{+-x} are kept out of the stored
/// logs so that ratios at distant arguments can be formed without overflow.
struct BesselLog {
  double x = 0.0;
  double nu = 0.0;
  double log_i_scaled = 0.0;  // ln(e^{-x} I_nu(x))
  double log_k_scaled = 0.0;  // ln(e^{x} K_nu(x))
  double i_logderiv = 0.0;    // I'_nu(x) / I_nu(x)
  double k_logderiv = 0.0;    // K'_nu(x) / K_nu(x), negative
  double ratio_i = 0.0;       // I_{nu+1}(x) / I_nu(x), in (0, 1)

  double log_i() const { return log_i_scaled + x; }
  double log_k() const { return log_k_scaled - x; }
};

BesselLog bessel_log(Order order, double x);

/// I_nu(x), I'_nu(x), K_nu(x), K'_nu(x) at one point.
/// Throws DomainError for x <= 0 and RangeError when a requested value does not fit in a
/// double (use Scaling::ExpScaled or bessel_log in that case).
BesselPair bessel_pair(Order order, double x, Scaling scale = Scaling::Unscaled);

ValueDeriv bessel_i(Order order, double x, Scaling scale = Scaling::Unscaled);
ValueDeriv bessel_k(Order order, double x, Scaling scale = Scaling::Unscaled);

/// I_{nu+1}(x) / I_nu(x) by continued fraction (Hankel expansion for very large x).
double bessel_ratio_i(Order order, double x);

/// Associated Legendre function P_n^{|m|}(mu) including the Condon-Shortley phase
/// (-1)^{|m|}, so P_1^1(mu) = -sqrt(1 - mu^2). Upward recurrence in n.
double assoc_legendre(int n, int m, double mu);

/// P_l^{|m|}(mu) for l = 0..n_max; entries with l < |m| are zero.
std::vector<double> assoc_legendre_column(int n_max, int m, double mu);

}  // namespace shellrecon
