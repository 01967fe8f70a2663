#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shellrecon/errors.hpp"
#include "shellrecon/forward.hpp"
#include "shellrecon/inverse.hpp"
#include "shellrecon/io.hpp"
#include "shellrecon/nd_map.hpp"
#include "shellrecon/verification.hpp"

namespace sr = shellrecon;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kDegenerate = 3, kInconsistent = 4, kNoRoot = 5 };

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sr::ParseError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sr::ParseError("cannot write " + path);
  out << text;
}

sr::Dimension to_dimension(int d) { return d == 3 ? sr::Dimension::Three : sr::Dimension::Two; }

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(cell, &pos));
      if (pos != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::logic_error&) {
      throw sr::ParseError("bad number \"" + cell + "\" in list \"" + text + "\"");
    }
  }
  if (out.empty()) throw sr::ParseError("empty list");
  return out;
}

struct Common {
  int dim = 2;
  double r1 = 0.0;
  double sigma1 = 1.0;
  std::string out = "-";
};

void add_dim(CLI::App* cmd, Common& c) {
  cmd->add_option("--dim", c.dim, "Spatial dimension")->check(CLI::IsMember({2, 3}));
}

// forward ------------------------------------------------------------------

struct ForwardArgs {
  Common c;
  std::string g;
  bool measurement = false;
  std::string wave_csv;
  std::string wave_grid;
};

sr::EvaluationGrid wave_grid(sr::Dimension dim, const std::string& spec) {
  std::vector<double> counts = parse_list(spec);
  const std::size_t need = dim == sr::Dimension::Two ? 2 : 3;
  if (counts.size() != need) throw sr::ParseError("--wave-grid needs " + std::to_string(need) + " counts");
  for (double v : counts) {
    if (!(v >= 1.0) || v != std::floor(v) || v > 4096) throw sr::ParseError("bad --wave-grid count");
  }
  sr::EvaluationGrid grid;
  const int nr = static_cast<int>(counts[0]);
  const int nphi = static_cast<int>(counts[1]);
  const int ntheta = need == 3 ? static_cast<int>(counts[2]) : 1;
  for (int i = 1; i <= nr; ++i) {
    for (int k = 0; k < ntheta; ++k) {
      for (int j = 0; j < nphi; ++j) {
        sr::GridPoint p;
        p.r = static_cast<double>(i) / nr;
        p.phi = 2.0 * std::numbers::pi * j / nphi;
        if (need == 3) p.theta = std::numbers::pi * (k + 0.5) / ntheta;
        grid.push_back(p);
      }
    }
  }
  return grid;
}

int cmd_forward(const ForwardArgs& a) {
  const sr::ShellConfig config{to_dimension(a.c.dim), a.c.r1, a.c.sigma1};
  config.validate();
  const sr::BoundaryData g = sr::io::boundary_from_json(read_input(a.g));
  if (g.dimension != config.dimension) {
    throw sr::DomainError("boundary data is " + std::to_string(sr::as_int(g.dimension)) +
                          "-D but --dim is " + std::to_string(a.c.dim));
  }
  const sr::BoundaryData trace = sr::dirichlet_trace(config, g);
  if (!a.wave_csv.empty()) {
    const sr::WaveCoefficients coeffs = sr::solve_coefficients(config, g);
    const std::string spec = a.wave_grid.empty()
                                 ? (config.dimension == sr::Dimension::Two ? "16,32" : "8,16,8")
                                 : a.wave_grid;
    const sr::EvaluationGrid grid = wave_grid(config.dimension, spec);
    write_output(a.wave_csv, sr::io::wave_samples_to_csv(config.dimension, grid,
                                                         sr::evaluate_wave(coeffs, grid)));
  }
  const std::string text = a.measurement ? sr::io::measurement_to_json({g, trace})
                                         : sr::io::boundary_to_json(trace);
  write_output(a.c.out, text + "\n");
  return kOk;
}

// ndmap --------------------------------------------------------------------

struct NdmapArgs {
  Common c;
  bool have_sigma1 = false;
  int n_max = 64;
  std::string sweep;
  std::string sweep_out = "-";
};

int cmd_ndmap(const NdmapArgs& a) {
  const sr::Dimension dim = to_dimension(a.c.dim);
  if (a.n_max < 0) throw sr::DomainError("--nmax must be >= 0");
  if (a.sweep.empty() && !a.have_sigma1) throw sr::DomainError("--sigma1 is required without --sweep");
  int rc = kOk;
  std::string table_text;
  if (a.have_sigma1) {
    const sr::ShellConfig config{dim, a.c.r1, a.c.sigma1};
    table_text = sr::symbol_table_to_csv(sr::symbol_table(config, a.n_max));
  }
  std::string sweep_text;
  if (!a.sweep.empty()) {
    const auto colon = a.sweep.find(':');
    if (colon == std::string::npos) throw sr::ParseError("--sweep expects axis:values");
    const std::string axis_name = a.sweep.substr(0, colon);
    const std::vector<double> points = parse_list(a.sweep.substr(colon + 1));
    sr::SweepAxis axis;
    sr::ShellConfig base{dim, a.c.r1, a.c.sigma1};
    if (axis_name == "sigma1") {
      axis = sr::SweepAxis::Sigma1ToOne;
      base.sigma1 = points.front();
    } else if (axis_name == "r1") {
      axis = sr::SweepAxis::R1ToZero;
      base.r1 = points.front();
      if (!a.have_sigma1) throw sr::DomainError("an r1 sweep needs --sigma1");
    } else {
      throw sr::ParseError("unknown sweep axis \"" + axis_name + "\" (use sigma1 or r1)");
    }
    base.validate();
    sr::NormOptions options;
    options.n_max = std::max(a.n_max, 64);
    const sr::SweepTable table = sr::norm_sweep(base, axis, points, options);
    sweep_text = sr::sweep_to_csv(table);
    if (!table.all_certified) {
      std::cerr << "ndmap: norm truncation could not be certified up to n = "
                << options.n_cap << "\n";
      rc = kDegenerate;
    }
    if (!table.strictly_decreasing) std::cerr << "ndmap: norm column is not strictly decreasing\n";
  }
  if (a.c.out == "-" && a.sweep_out == "-" && !table_text.empty() && !sweep_text.empty()) {
    write_output("-", table_text + "\n" + sweep_text);
  } else {
    if (!table_text.empty()) write_output(a.c.out, table_text);
    if (!sweep_text.empty()) write_output(a.sweep_out, sweep_text);
  }
  return rc;
}

// invert -------------------------------------------------------------------

struct InvertArgs {
  Common c;
  std::string measurement;
  std::string g;
  std::string trace;
  std::vector<int> mode;
  bool no_cross_validate = false;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::optional<double> e_tilde;
};

int cmd_invert(const InvertArgs& a) {
  sr::Measurement meas;
  if (!a.measurement.empty()) {
    if (!a.g.empty() || !a.trace.empty()) {
      throw sr::DomainError("use either --measurement or --g with --trace");
    }
    meas = sr::io::measurement_from_json(read_input(a.measurement));
  } else {
    if (a.g.empty() || a.trace.empty()) {
      throw sr::DomainError("invert needs --measurement, or both --g and --trace");
    }
    if (a.g == "-" && a.trace == "-") throw sr::DomainError("only one input can be stdin");
    meas = {sr::io::boundary_from_json(read_input(a.g)),
            sr::io::boundary_from_json(read_input(a.trace))};
    meas.validate();
  }
  sr::RecoveryOptions options;
  options.cross_validate = !a.no_cross_validate;
  if (!a.mode.empty()) {
    if (a.mode.size() > 2) throw sr::ParseError("--mode takes n or n,m");
    options.mode = sr::ModeIndex{a.mode[0], a.mode.size() == 2 ? a.mode[1] : 0};
  }
  if (a.noise != 0.0) {
    if (!(a.noise > 0.0)) throw sr::DomainError("--noise must be positive");
    options.noise = sr::NoiseOptions{a.noise, a.seed};
    std::cerr << "invert: multiplicative noise stddev " << a.noise << ", seed " << a.seed << "\n";
  }
  const sr::RecoveryResult result = sr::recover_sigma(meas, a.c.r1, options);
  std::optional<sr::PotentialReport> potential;
  if (a.e_tilde) potential = sr::potential_report(result.sigma1, *a.e_tilde);
  write_output(a.c.out, sr::io::recovery_to_json(result, meas.dimension(), potential) + "\n");
  return kOk;
}

// nonuniq ------------------------------------------------------------------

struct NonuniqArgs {
  Common c;
  double r2 = 0.0;
  int n = 0;
  std::string range;
  int scan_points = 256;
};

int cmd_nonuniq(const NonuniqArgs& a) {
  const sr::ShellConfig config{to_dimension(a.c.dim), a.c.r1, a.c.sigma1};
  config.validate();
  if (a.n < 0) throw sr::DomainError("--n must be >= 0");
  sr::NonuniqOptions options;
  options.scan_points = a.scan_points;
  if (!a.range.empty()) {
    const std::vector<double> r = parse_list(a.range);
    if (r.size() != 2) throw sr::ParseError("--sigma2-range takes lo,hi");
    options.sigma2_min = r[0];
    options.sigma2_max = r[1];
  }
  const std::vector<sr::NonuniqPair> pairs = sr::find_nonuniq_pairs(config, a.r2, a.n, options);
  write_output(a.c.out, sr::io::nonuniq_to_json(pairs) + "\n");
  if (pairs.size() > 1) std::cerr << "nonuniq: " << pairs.size() << " roots found\n";
  for (const sr::NonuniqPair& p : pairs) {
    if (!p.verified) {
      std::cerr << "nonuniq: root failed independent verification\n";
      return kDegenerate;
    }
  }
  return kOk;
}

// verify -------------------------------------------------------------------

struct VerifyArgs {
  bool quick = false;
  bool full = false;
  std::vector<std::string> suites;
  std::string out = "-";
};

int cmd_verify(const VerifyArgs& a) {
  if (a.quick && a.full) throw sr::DomainError("--quick and --full are exclusive");
  const sr::verify::Level level = a.full ? sr::verify::Level::Full : sr::verify::Level::Quick;
  const std::vector<std::string>& names = a.suites.empty() ? sr::verify::suite_names() : a.suites;
  std::vector<sr::verify::SuiteResult> results;
  bool all = true;
  for (const std::string& name : names) {
    results.push_back(sr::verify::run_suite(name, level));
    all = all && results.back().passed;
  }
  write_output(a.out, sr::verify::format_table(results));
  return all ? kOk : kFailed;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const sr::NoRootError*>(&e)) return kNoRoot;
  if (dynamic_cast<const sr::InconsistentMeasurementError*>(&e)) return kInconsistent;
  if (dynamic_cast<const sr::DegeneracyError*>(&e) || dynamic_cast<const sr::IllPosedModeError*>(&e) ||
      dynamic_cast<const sr::RangeError*>(&e)) {
    return kDegenerate;
  }
  if (dynamic_cast<const sr::ParseError*>(&e) || dynamic_cast<const sr::DomainError*>(&e) ||
      dynamic_cast<const sr::IndexError*>(&e)) {
    return kUsage;
  }
  return kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forward and inverse problems for core-shell Schroedinger boundary maps"};
  app.require_subcommand(1);

  ForwardArgs fwd;
  auto* forward = app.add_subcommand("forward", "Dirichlet trace (and optional wave samples) for Neumann data");
  add_dim(forward, fwd.c);
  forward->add_option("--r1", fwd.c.r1, "Core radius")->required();
  forward->add_option("--sigma1", fwd.c.sigma1, "Core coefficient")->required();
  forward->add_option("--g", fwd.g, "Neumann data JSON ('-' for stdin)")->required();
  forward->add_option("--out", fwd.c.out, "Output JSON ('-' for stdout)");
  forward->add_flag("--measurement", fwd.measurement, "Emit {neumann, dirichlet} for invert");
  forward->add_option("--wave-csv", fwd.wave_csv, "Write wave samples r,phi[,theta],re,im");
  forward->add_option("--wave-grid", fwd.wave_grid, "Sample counts nr,nphi[,ntheta]");

  NdmapArgs nd;
  auto* ndmap = app.add_subcommand("ndmap", "Symbol table n,lambda and norm sweeps");
  add_dim(ndmap, nd.c);
  ndmap->add_option("--r1", nd.c.r1, "Core radius")->required();
  auto* sigma_opt = ndmap->add_option("--sigma1", nd.c.sigma1, "Core coefficient");
  ndmap->add_option("--nmax", nd.n_max, "Largest mode in the table");
  ndmap->add_option("--sweep", nd.sweep, "sigma1:v1,v2,... or r1:v1,v2,...");
  ndmap->add_option("--out", nd.c.out, "Symbol table CSV ('-' for stdout)");
  ndmap->add_option("--sweep-out", nd.sweep_out, "Sweep CSV ('-' for stdout)");

  InvertArgs inv;
  double e_tilde = 0.0;
  auto* invert = app.add_subcommand("invert", "Recover sigma1 from one measurement");
  invert->add_option("--r1", inv.c.r1, "Known core radius")->required();
  invert->add_option("--measurement", inv.measurement, "Measurement JSON ('-' for stdin)");
  invert->add_option("--g", inv.g, "Neumann data JSON");
  invert->add_option("--trace", inv.trace, "Dirichlet trace JSON");
  invert->add_option("--mode", inv.mode, "Use only this mode: n or n,m")->delimiter(',');
  invert->add_flag("--no-cross-validate", inv.no_cross_validate, "Skip the other modes");
  invert->add_option("--noise", inv.noise, "Multiplicative Gaussian noise on the trace");
  invert->add_option("--seed", inv.seed, "Noise seed");
  auto* e_opt = invert->add_option("--e-tilde", e_tilde, "Reduced energy for the potential report");
  invert->add_option("--out", inv.c.out, "Output JSON ('-' for stdout)");

  NonuniqArgs nu;
  auto* non = app.add_subcommand("nonuniq", "Find (r2, sigma2) indistinguishable on one mode");
  add_dim(non, nu.c);
  non->add_option("--r1", nu.c.r1, "Core radius of configuration A")->required();
  non->add_option("--sigma1", nu.c.sigma1, "Core coefficient of configuration A")->required();
  non->add_option("--r2", nu.r2, "Core radius of configuration B")->required();
  non->add_option("--n", nu.n, "Mode")->required();
  non->add_option("--sigma2-range", nu.range, "Search interval lo,hi");
  non->add_option("--scan-points", nu.scan_points, "Log-spaced scan points")->check(CLI::Range(2, 100000));
  non->add_option("--out", nu.c.out, "Output JSON ('-' for stdout)");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Run the verification suites");
  verify->add_flag("--quick", ver.quick, "Reduced grids (default)");
  verify->add_flag("--full", ver.full, "Full grids");
  verify->add_option("--suite", ver.suites, "Run only these suites")
      ->check(CLI::IsMember(sr::verify::suite_names()));
  verify->add_option("--out", ver.out, "Table output ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    if (rc == 0) return kOk;
    for (CLI::App* sub : app.get_subcommands()) std::cerr << "\n" << sub->help();
    return kUsage;
  }

  try {
    if (*forward) return cmd_forward(fwd);
    if (*ndmap) {
      nd.have_sigma1 = sigma_opt->count() > 0;
      return cmd_ndmap(nd);
    }
    if (*invert) {
      if (e_opt->count() > 0) inv.e_tilde = e_tilde;
      return cmd_invert(inv);
    }
    if (*non) return cmd_nonuniq(nu);
    if (*verify) return cmd_verify(ver);
  } catch (const std::exception& e) {
    std::cerr << "shellrecon: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kUsage;
}
