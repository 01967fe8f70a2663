#include "shellrecon/special_fn.hpp"

#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include "shellrecon/errors.hpp"

namespace shellrecon {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
// Above this argument the continued fraction needs ~x terms; the Hankel expansion
// converges there whenever nu^2 is small compared with x.
constexpr double kHankelThreshold = 1.0e4;

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be positive and finite, got " +
                      std::to_string(x));
  }
}

struct KSeed {
  double log_scaled;  // ln(e^x K_mu(x))
  double ratio;       // K_{mu+1}(x) / K_mu(x)
};

// K_0, K_1 for x <= 2 from the logarithmic power series.
KSeed k01_series(double x) {
  const double y = 0.25 * x * x;
  const double log_half = std::log(0.5 * x);

  double i0 = 1.0, i1 = 1.0;          // partial sums (i1 without the x/2 prefactor)
  double s0 = 0.0, s1 = 0.0;
  double t0 = 1.0, t1 = 1.0;          // y^k/(k!)^2 and y^k/(k!(k+1)!)
  double harmonic = 0.0;              // H_k
  // k = 0 term of the K_1 sum: psi(1) + psi(2) = -2 gamma + 1
  s1 = (1.0 - 2.0 * kEulerGamma);
  for (int k = 1; k < 200; ++k) {
    t0 *= y / (static_cast<double>(k) * k);
    t1 *= y / (static_cast<double>(k) * (k + 1));
    harmonic += 1.0 / k;
    i0 += t0;
    i1 += t1;
    s0 += t0 * harmonic;
    const double psi_sum = 2.0 * harmonic + 1.0 / (k + 1) - 2.0 * kEulerGamma;
    s1 += t1 * psi_sum;
    if (t0 * (harmonic + 1.0) < kEps * 1e-3 * (s0 + i0)) break;
  }
  i1 *= 0.5 * x;
  const double k0 = -(log_half + kEulerGamma) * i0 + s0;
  const double k1 = 1.0 / x + log_half * i1 - 0.25 * x * s1;
  return {std::log(k0) + x, k1 / k0};
}

// K_0, K_1 for x > 2 by Steed's method on the second continued fraction (Temme).
KSeed k01_steed(double x) {
  const double mu = 0.0;
  const double a1 = 0.25 - mu * mu;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 100000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < kEps) break;
  }
  h *= a1;
  const double log_scaled = 0.5 * std::log(kPi / (2.0 * x)) - std::log(s);
  const double ratio = (mu + x + 0.5 - h) / x;
  return {log_scaled, ratio};
}

KSeed k_seed(Order::Kind kind, double x) {
  if (kind == Order::Kind::HalfInteger) {
    // K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}, K_{3/2}(x) = K_{1/2}(x) (1 + 1/x)
    return {0.5 * std::log(kPi / (2.0 * x)), 1.0 + 1.0 / x};
  }
  return x <= 2.0 ? k01_series(x) : k01_steed(x);
}

// I_{nu+1}/I_nu by modified Lentz on 1/(b1 + 1/(b2 + ...)), b_k = 2(nu+k)/x.
double ratio_continued_fraction(double nu, double x) {
  constexpr double kTiny = 1.0e-300;
  double f = kTiny;
  double c = f;
  double d = 0.0;
  const double inv_x = 1.0 / x;
  const long max_iter = 10000 + static_cast<long>(4.0 * x + 4.0 * nu);
  for (long k = 1; k <= max_iter; ++k) {
    const double b = 2.0 * (nu + k) * inv_x;
    d = b + d;
    if (d == 0.0) d = kTiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < kEps) return f;
  }
  throw RangeError("bessel_ratio_i: continued fraction did not converge at x = " +
                   std::to_string(x));
}

// ln(sqrt(2 pi x) e^{-x} I_nu(x)) by the Hankel expansion. Returns false when the
// series starts to diverge before reaching full precision.
bool hankel_log_i(double nu, double x, double& out) {
  const double mu4 = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double prev_abs = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu4 - odd * odd) / (8.0 * k * x);
    const double abs_term = std::fabs(term);
    if (abs_term > prev_abs) return false;
    sum += term;
    if (abs_term < 0.25 * kEps * std::fabs(sum)) {
      out = std::log(sum);
      return true;
    }
    prev_abs = abs_term;
  }
  return false;
}

double ratio_i_impl(double nu, double x) {
  if (x >= kHankelThreshold) {
    double ln_nu = 0.0;
    double ln_next = 0.0;
    if (hankel_log_i(nu, x, ln_nu) && hankel_log_i(nu + 1.0, x, ln_next)) {
      return std::exp(ln_next - ln_nu);
    }
  }
  return ratio_continued_fraction(nu, x);
}

// Mantissa/exponent accumulator so that long products of K ratios stay exact in range.
struct LogAccumulator {
  double mantissa = 1.0;
  long exponent = 0;

  void multiply(double factor) {
    int e = 0;
    mantissa = std::frexp(mantissa * factor, &e);
    exponent += e;
  }
  double log() const { return std::log(mantissa) + exponent * std::numbers::ln2; }
};

double checked_exp(double log_value, const char* what, double x, double nu) {
  if (log_value > std::log(DBL_MAX) || log_value < std::log(DBL_MIN)) {
    throw RangeError(std::string(what) + "(nu=" + std::to_string(nu) + ", x=" +
                     std::to_string(x) +
                     ") is outside the double range; use Scaling::ExpScaled or bessel_log");
  }
  return std::exp(log_value);
}

}  // namespace

Order Order::integer(int n) {
  if (n < 0) throw DomainError("Order::integer: negative order " + std::to_string(n));
  return Order(Kind::Integer, n);
}

Order Order::half_integer(int n) {
  if (n < 0) throw DomainError("Order::half_integer: negative index " + std::to_string(n));
  return Order(Kind::HalfInteger, n);
}

double bessel_ratio_i(Order order, double x) {
  require_positive(x, "bessel_ratio_i");
  return ratio_i_impl(order.nu(), x);
}

BesselLog bessel_log(Order order, double x) {
  require_positive(x, "bessel_log");
  const double nu = order.nu();
  const double base_nu = order.kind() == Order::Kind::Integer ? 0.0 : 0.5;

  // Forward recurrence on K ratios: rho_{v} = K_{v+1}/K_v = K_{v-1}/K_v + 2v/x.
  const KSeed seed = k_seed(order.kind(), x);
  double rho = seed.ratio;
  // K_{mu-1}/K_mu at the seed order: K_{-1} = K_1 and K_{-1/2} = K_{1/2}.
  double prev_over_cur = order.kind() == Order::Kind::Integer ? seed.ratio : 1.0;
  LogAccumulator acc;
  for (int j = 0; j < order.index(); ++j) {
    const double v = base_nu + j;
    acc.multiply(rho);  // K_{v+1} = rho_v K_v
    prev_over_cur = 1.0 / rho;
    rho = prev_over_cur + 2.0 * (v + 1.0) / x;
  }

  BesselLog out;
  out.x = x;
  out.nu = nu;
  out.log_k_scaled = seed.log_scaled + acc.log();
  out.k_logderiv = -prev_over_cur - nu / x;
  out.ratio_i = ratio_i_impl(nu, x);
  out.i_logderiv = out.ratio_i + nu / x;
  // Wronskian I_nu K_{nu+1} + I_{nu+1} K_nu = 1/x.
  out.log_i_scaled = -std::log(x) - out.log_k_scaled - std::log(rho + out.ratio_i);
  return out;
}

BesselPair bessel_pair(Order order, double x, Scaling scale) {
  const BesselLog lg = bessel_log(order, x);
  const bool scaled = scale == Scaling::ExpScaled;
  const double log_i = scaled ? lg.log_i_scaled : lg.log_i();
  const double log_k = scaled ? lg.log_k_scaled : lg.log_k();
  BesselPair out;
  out.scale = scale;
  out.i_val = checked_exp(log_i, "I", x, lg.nu);
  out.k_val = checked_exp(log_k, "K", x, lg.nu);
  out.i_deriv = out.i_val * lg.i_logderiv;
  out.k_deriv = out.k_val * lg.k_logderiv;
  if (!std::isfinite(out.i_deriv) || !std::isfinite(out.k_deriv)) {
    throw RangeError("bessel derivative overflow at nu=" + std::to_string(lg.nu) +
                     ", x=" + std::to_string(x) + "; use Scaling::ExpScaled or bessel_log");
  }
  return out;
}

ValueDeriv bessel_i(Order order, double x, Scaling scale) {
  const BesselLog lg = bessel_log(order, x);
  const double log_i = scale == Scaling::ExpScaled ? lg.log_i_scaled : lg.log_i();
  const double value = checked_exp(log_i, "I", x, lg.nu);
  return {value, value * lg.i_logderiv};
}

ValueDeriv bessel_k(Order order, double x, Scaling scale) {
  const BesselLog lg = bessel_log(order, x);
  const double log_k = scale == Scaling::ExpScaled ? lg.log_k_scaled : lg.log_k();
  const double value = checked_exp(log_k, "K", x, lg.nu);
  return {value, value * lg.k_logderiv};
}

std::vector<double> assoc_legendre_column(int n_max, int m, double mu) {
  const int am = std::abs(m);
  if (n_max < 0) throw IndexError("assoc_legendre: negative degree");
  if (!(std::fabs(mu) <= 1.0)) {
    throw DomainError("assoc_legendre: |mu| must not exceed 1, got " + std::to_string(mu));
  }
  std::vector<double> col(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (am > n_max) return col;

  // P_m^m = (-1)^m (2m-1)!! (1 - mu^2)^{m/2}
  const double s = std::sqrt((1.0 - mu) * (1.0 + mu));
  double pmm = 1.0;
  for (int k = 1; k <= am; ++k) pmm *= -(2.0 * k - 1.0) * s;
  col[am] = pmm;
  if (am == n_max) return col;
  double pm1 = mu * (2.0 * am + 1.0) * pmm;
  col[am + 1] = pm1;
  for (int l = am + 2; l <= n_max; ++l) {
    const double pl = (mu * (2.0 * l - 1.0) * pm1 - (l + am - 1.0) * pmm) / (l - am);
    pmm = pm1;
    pm1 = pl;
    col[l] = pl;
  }
  return col;
}

double assoc_legendre(int n, int m, double mu) {
  if (n < 0 || std::abs(m) > n) {
    throw IndexError("assoc_legendre: need |m| <= n, got n=" + std::to_string(n) +
                     ", m=" + std::to_string(m));
  }
  return assoc_legendre_column(n, m, mu)[n];
}

}  // namespace shellrecon
