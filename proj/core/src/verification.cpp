#include "shellrecon/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>

#include "shellrecon/cross_products.hpp"
#include "shellrecon/errors.hpp"
#include "shellrecon/forward.hpp"
#include "shellrecon/inverse.hpp"
#include "shellrecon/nd_map.hpp"
#include "shellrecon/oracle.hpp"
#include "shellrecon/parallel.hpp"

namespace shellrecon::verify {

namespace {

std::vector<Order> orders_up_to(int n_max, int step = 1) {
  std::vector<Order> out;
  for (int n = 0; n <= n_max; n += step) out.push_back(Order::integer(n));
  for (int n = 0; n <= n_max; n += step) out.push_back(Order::half_integer(n));
  return out;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Per-item tallies merged in index order.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  double worst = 0.0;

  void record(double value, bool ok) {
    ++checks;
    if (!ok) ++failures;
    if (std::isnan(value)) {
      worst = value;
    } else if (!std::isnan(worst)) {
      worst = std::max(worst, value);
    }
  }
  void merge(const Tally& o) {
    checks += o.checks;
    failures += o.failures;
    if (std::isnan(o.worst) || std::isnan(worst)) {
      worst = std::nan("");
    } else {
      worst = std::max(worst, o.worst);
    }
  }
};

SuiteResult finish(const std::string& name, const std::vector<Tally>& parts,
                   const std::string& metric) {
  Tally total;
  for (const Tally& t : parts) total.merge(t);
  SuiteResult r;
  r.name = name;
  r.checks = total.checks;
  r.failures = total.failures;
  r.worst = total.worst;
  r.passed = total.failures == 0 && total.checks > 0;
  r.detail = metric + " " + sci(total.worst) + ", " + std::to_string(total.failures) + "/" +
             std::to_string(total.checks) + " failed";
  return r;
}

SuiteResult identities(Level level, const Tolerances& tol) {
  const std::size_t triples = level == Level::Full ? 1000 : 50;
  std::mt19937_64 rng(tol.seed);
  std::uniform_real_distribution<double> dist(0.05, 10.0);
  std::vector<std::array<double, 3>> points(triples);
  for (auto& p : points) p = {dist(rng), dist(rng), dist(rng)};

  const std::vector<Order> orders = orders_up_to(20);
  std::vector<Tally> parts(orders.size());
  parallel_for(orders.size(), [&](std::size_t k) {
    for (const auto& [x, y, z] : points) {
      const double rel = check_identities(orders[k], x, y, z).max_relative();
      parts[k].record(rel, rel <= tol.identity);
      // antisymmetry on the common scale
      const CrossProductValues a = cross_products(orders[k], x, y);
      const CrossProductValues b = cross_products(orders[k], y, x);
      const double anti = std::max(std::fabs(a.d_hat + b.d_hat), std::fabs(a.d11_hat + b.d11_hat)) /
                          std::max({1.0, std::fabs(a.d11_hat), std::fabs(b.d11_hat)});
      parts[k].record(anti, anti <= 1e-13);
    }
  });
  return finish("identities", parts, "max relative residual");
}

SuiteResult wronskian(Level level, const Tolerances& tol) {
  const int xs = level == Level::Full ? 200 : 40;
  const std::vector<Order> orders = orders_up_to(60, level == Level::Full ? 1 : 5);
  std::vector<double> grid(xs);
  for (int k = 0; k < xs; ++k) {
    grid[k] = 1e-3 * std::pow(50.0 / 1e-3, static_cast<double>(k) / (xs - 1));
  }
  std::vector<Tally> wr(orders.size());
  std::vector<Tally> fd(orders.size());
  parallel_for(orders.size(), [&](std::size_t k) {
    const Order order = orders[k];
    for (double x : grid) {
      const BesselLog b = bessel_log(order, x);
      const BesselLog up = bessel_log(order.next(), x);
      // x (I_nu K_{nu+1} + I_{nu+1} K_nu) = 1, from I' = I_{nu+1} + nu I/x, K' = -K_{nu+1} + nu K/x
      const double w = x * (std::exp(b.log_i_scaled + up.log_k_scaled) +
                            std::exp(up.log_i_scaled + b.log_k_scaled));
      const double res = std::fabs(w - 1.0);
      wr[k].record(res, res <= tol.wronskian);

      const double h = 1e-5 * x;
      const BesselLog plus = bessel_log(order, x + h);
      const BesselLog minus = bessel_log(order, x - h);
      // (f(x+h) - f(x-h)) / (2h f(x)) with f = I, K
      const double di = (std::expm1(plus.log_i_scaled - b.log_i_scaled + h) -
                         std::expm1(minus.log_i_scaled - b.log_i_scaled - h)) /
                        (2.0 * h);
      const double dk = (std::expm1(plus.log_k_scaled - b.log_k_scaled - h) -
                         std::expm1(minus.log_k_scaled - b.log_k_scaled + h)) /
                        (2.0 * h);
      // log-derivative errors against the natural scale max(|f'/f|, 1/x)
      const double ei = std::fabs(di - b.i_logderiv) / std::max(std::fabs(b.i_logderiv), 1.0 / x);
      const double ek = std::fabs(dk - b.k_logderiv) / std::max(std::fabs(b.k_logderiv), 1.0 / x);
      fd[k].record(ei, ei <= tol.finite_difference);
      fd[k].record(ek, ek <= tol.finite_difference);
      if (!(b.k_logderiv < 0.0)) fd[k].record(1.0, false);
    }
  });
  SuiteResult a = finish("wronskian", wr, "max |xW + 1|");
  const SuiteResult b = finish("wronskian", fd, "max derivative error");
  a.passed = a.passed && b.passed;
  a.checks += b.checks;
  a.failures += b.failures;
  a.detail += "; " + b.detail;
  return a;
}

SuiteResult lemma1(Level, const Tolerances&) {
  const std::vector<Order> orders = orders_up_to(20);
  std::vector<Tally> parts(orders.size());
  parallel_for(orders.size(), [&](std::size_t k) {
    const double nu = orders[k].nu();
    for (double x : {0.01, 0.1, 1.0, 5.0, 20.0}) {
      const double ratio = bessel_ratio_i(orders[k], x);
      for (double alpha : {1.0, 2.0, 3.0}) {
        const double lambda = nu + 1.0 + 0.5 * (alpha - 1.0);
        const double bound = x / (lambda + std::sqrt(lambda * lambda + x * x));
        // margin relative to the bound; must be positive
        const double margin = (ratio - bound) / bound;
        parts[k].record(-margin, margin > 0.0);
      }
    }
  });
  return finish("lemma1", parts, "max -(ratio-bound)/bound");
}

SuiteResult monotonicity(Level, const Tolerances&) {
  const std::vector<Order> orders = orders_up_to(10);
  const int points = 200;
  std::vector<double> eta(points);
  for (int k = 0; k < points; ++k) eta[k] = std::pow(10.0, -3.0 + 6.0 * k / (points - 1));
  std::vector<Tally> parts(orders.size());
  parallel_for(orders.size(), [&](std::size_t k) {
    const Order order = orders[k];
    const Dimension dim =
        order.kind() == Order::Kind::Integer ? Dimension::Two : Dimension::Three;
    for (double r : {0.1, 0.5, 0.9}) {
      double prev_f = -INFINITY;
      double prev_t = -INFINITY;
      for (double e : eta) {
        // paper form (alpha = 2) and the admittance actually inverted by recover_sigma
        const double f = monotone_f(order, r, e, 2.0);
        const double t = core_admittance(dim, order.index(), r, e * e);
        if (e != eta.front()) {
          parts[k].record(0.0, f > prev_f);
          parts[k].record(0.0, t > prev_t);
        }
        prev_f = f;
        prev_t = t;
      }
    }
  });
  SuiteResult r = finish("monotonicity", parts, "inversions");
  r.worst = static_cast<double>(r.failures);
  r.detail = std::to_string(r.failures) + " inversions in " + std::to_string(r.checks) + " steps";
  return r;
}

SuiteResult oracle(Level level, const Tolerances& tol) {
  struct Case {
    ShellConfig config;
    int n;
  };
  std::vector<Case> cases;
  const bool full = level == Level::Full;
  const std::vector<double> radii =
      full ? std::vector<double>{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}
           : std::vector<double>{0.2, 0.5, 0.8};
  const std::vector<double> sigmas =
      full ? std::vector<double>{0.25, 1.0, 4.0} : std::vector<double>{0.25, 4.0};
  const std::vector<int> modes = full ? std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8}
                                      : std::vector<int>{0, 3, 8};
  for (Dimension dim : {Dimension::Two, Dimension::Three}) {
    for (double r1 : radii) {
      for (double s : sigmas) {
        for (int n : modes) cases.push_back({{dim, r1, s}, n});
      }
    }
  }
  std::vector<Tally> agree(cases.size());
  std::vector<Tally> order(cases.size());
  parallel_for(cases.size(), [&](std::size_t k) {
    const RadialProblem p{cases[k].config, cases[k].n, 4000};
    const std::vector<ConvergenceRow> rows = convergence_study(p, {1000, 2000, 4000});
    agree[k].record(rows.back().error, rows.back().error <= tol.oracle);
    for (std::size_t j = 1; j < rows.size(); ++j) {
      const double o = rows[j].observed_order;
      order[k].record(std::fabs(o - 2.0), o >= tol.order_lo && o <= tol.order_hi);
    }
  });
  SuiteResult a = finish("oracle", agree, "max |oracle - series|");
  const SuiteResult b = finish("oracle", order, "max |order - 2|");
  a.passed = a.passed && b.passed;
  a.checks += b.checks;
  a.failures += b.failures;
  a.detail += "; " + b.detail;
  return a;
}

BoundaryData roundtrip_data(Dimension dim) {
  BoundaryData g = BoundaryData::empty_like(dim);
  if (dim == Dimension::Two) {
    g.set({0, 0}, 0.5);
    g.set({1, 0}, 1.0);
    g.set({2, 0}, 0.25);
  } else {
    g.set({0, 0}, 0.5);
    g.set({1, 0}, 1.0);
    g.set({2, 1}, 0.25);
  }
  return g;
}

SuiteResult roundtrip(Level, const Tolerances& tol) {
  std::vector<ShellConfig> cases;
  for (Dimension dim : {Dimension::Two, Dimension::Three}) {
    for (double r1 : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
      for (double s : {0.1, 0.5, 1.0, 2.0, 10.0}) cases.push_back({dim, r1, s});
    }
  }
  std::vector<Tally> parts(cases.size());
  parallel_for(cases.size(), [&](std::size_t k) {
    const ShellConfig& c = cases[k];
    try {
      const Measurement m = Measurement::synthesize(c, roundtrip_data(c.dimension));
      const RecoveryResult r = recover_sigma(m, c.r1);
      const double err = std::fabs(r.sigma1 - c.sigma1) / c.sigma1;
      parts[k].record(err, err <= tol.roundtrip);
    } catch (const Error&) {
      parts[k].record(std::nan(""), false);
    }
  });
  return finish("roundtrip", parts, "max relative sigma1 error");
}

SuiteResult nonuniq(Level level, const Tolerances& tol) {
  const int wanted = level == Level::Full ? 20 : 5;
  std::vector<Tally> parts;
  std::string note;
  for (Dimension dim : {Dimension::Two, Dimension::Three}) {
    std::mt19937_64 rng(tol.seed + as_int(dim));
    std::uniform_real_distribution<double> radius(0.2, 0.8);
    std::uniform_real_distribution<double> log_sigma(std::log(0.1), std::log(10.0));
    std::uniform_int_distribution<int> mode(0, 4);
    NonuniqOptions options;
    options.tolerance = tol.nonuniq;
    Tally tally;
    int found = 0;
    for (int attempt = 0; attempt < 10 * wanted && found < wanted; ++attempt) {
      const ShellConfig a{dim, radius(rng), std::exp(log_sigma(rng))};
      const double r2 = radius(rng);
      const int n = mode(rng);
      if (std::fabs(r2 - a.r1) < 0.05) continue;
      try {
        for (const NonuniqPair& p : find_nonuniq_pairs(a, r2, n, options)) {
          tally.record(std::max(p.det_residual, p.symbol_gap), p.verified);
        }
        ++found;
      } catch (const NoRootError&) {
      }
    }
    if (found < wanted) tally.record(std::nan(""), false);
    // control: sigma1 = 1 must pair with sigma2 = 1
    const auto control = find_nonuniq_pairs({dim, 0.5, 1.0}, 0.7, 1, options);
    const double gap = std::fabs(control.front().config_b.sigma1 - 1.0);
    tally.record(gap, control.size() == 1 && gap <= tol.nonuniq);
    note += (note.empty() ? "" : ", ") + std::to_string(found) + " bracketed cases in " +
            std::to_string(as_int(dim)) + "-D";
    parts.push_back(tally);
  }
  SuiteResult r = finish("nonuniq", parts, "max residual");
  r.detail += " (" + note + ")";
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identities", "wronskian", "lemma1", "monotonicity",
                                              "oracle",     "roundtrip", "nonuniq"};
  return names;
}

SuiteResult run_suite(const std::string& name, Level level, const Tolerances& tol) {
  if (name == "identities") return identities(level, tol);
  if (name == "wronskian") return wronskian(level, tol);
  if (name == "lemma1") return lemma1(level, tol);
  if (name == "monotonicity") return monotonicity(level, tol);
  if (name == "oracle") return oracle(level, tol);
  if (name == "roundtrip") return roundtrip(level, tol);
  if (name == "nonuniq") return nonuniq(level, tol);
  throw DomainError("unknown verification suite \"" + name + "\"");
}

std::string format_table(const std::vector<SuiteResult>& results) {
  std::string out;
  char line[512];
  std::snprintf(line, sizeof line, "%-14s %-6s %s\n", "suite", "result", "detail");
  out += line;
  for (const SuiteResult& r : results) {
    std::snprintf(line, sizeof line, "%-14s %-6s %s\n", r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.detail.c_str());
    out += line;
  }
  return out;
}

}  // namespace shellrecon::verify
