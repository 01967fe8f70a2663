// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "shellrecon/nd_map.hpp"
#include "shellrecon/verification.hpp"

namespace sr = shellrecon;
namespace v = shellrecon::verify;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome suite(const std::string& name, double time_limit) {
  const auto start = Clock::now();
  const v::SuiteResult r = v::run_suite(name, v::Level::Full);
  const double t = seconds_since(start);
  const bool in_time = time_limit <= 0.0 || t <= time_limit;
  std::string detail = r.detail + ", " + fmt("%.2f s", t);
  if (time_limit > 0.0) detail += " (limit " + fmt("%.0f s", time_limit) + ")";
  return {r.passed && in_time, detail};
}

struct Capture {
  int status = -1;
  std::string out;
};

Capture capture(const std::string& args) {
  Capture c;
  FILE* p = popen((std::string(SHELLRECON_CLI) + " " + args + " 2>/dev/null").c_str(), "r");
  if (!p) return c;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) c.out.append(buf, n);
  const int raw = pclose(p);
  c.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return c;
}

// sigma1 -> 1 by halving the distance, r1 -> 0 by halving, 8 points each.
Outcome limits() {
  struct Sweep {
    sr::ShellConfig base;
    sr::SweepAxis axis;
    std::vector<double> points;
    std::string label;
  };
  std::vector<Sweep> sweeps;
  for (sr::Dimension dim : {sr::Dimension::Two, sr::Dimension::Three}) {
    const std::string d = std::to_string(sr::as_int(dim)) + "-D ";
    std::vector<double> above, below, radii;
    for (int k = 0; k < 8; ++k) {
      above.push_back(1.0 + std::ldexp(1.0, -k));
      below.push_back(1.0 - std::ldexp(1.0, -k - 1));
      radii.push_back(0.4 * std::ldexp(1.0, -k));
    }
    sweeps.push_back({{dim, 0.5, 2.0}, sr::SweepAxis::Sigma1ToOne, above, d + "sigma1 from 2"});
    sweeps.push_back({{dim, 0.5, 0.5}, sr::SweepAxis::Sigma1ToOne, below, d + "sigma1 from 0.5"});
    sweeps.push_back({{dim, 0.4, 4.0}, sr::SweepAxis::R1ToZero, radii, d + "r1 from 0.4"});
  }
  bool pass = true;
  std::string detail;
  for (const Sweep& s : sweeps) {
    const sr::SweepTable t = sr::norm_sweep(s.base, s.axis, s.points);
    const double ratio = t.rows.back().norm / t.rows.front().norm;
    const bool ok = t.strictly_decreasing && t.all_certified && ratio < 1e-3;
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += s.label + " ratio " + fmt("%.2e", ratio) + (t.strictly_decreasing ? "" : " not decreasing") +
              (t.all_certified ? "" : " uncertified");
  }
  return {pass, detail};
}

Outcome determinism() {
  const std::vector<std::string> commands{
      "ndmap --dim 3 --r1 0.4 --sigma1 0.25 --nmax 64",
      "ndmap --dim 2 --r1 0.5 --sweep sigma1:2,1.5,1.25,1.125",
      "nonuniq --dim 2 --r1 0.5 --sigma1 2 --r2 0.7 --n 1",
      "verify --quick",
  };
  bool identical = true;
  for (const std::string& c : commands) {
    const Capture a = capture(c);
    const Capture b = capture(c);
    if (a.status != b.status || a.out != b.out || a.out.empty()) identical = false;
  }
  const auto start = Clock::now();
  const Capture full = capture("verify --full");
  const double t = seconds_since(start);
  const bool ok = identical && full.status == 0 && t <= 300.0;
  return {ok, std::string(identical ? "repeated runs byte-identical" : "repeated runs differ") +
                  ", verify --full exit " + std::to_string(full.status) + " in " + fmt("%.1f s", t) +
                  " (limit 300 s)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"cross-product identities", [] { return suite("identities", 30.0); }},
      {"wronskian and derivatives", [] { return suite("wronskian", 10.0); }},
      {"lemma 1 inequality", [] { return suite("lemma1", 0.0); }},
      {"monotonicity", [] { return suite("monotonicity", 0.0); }},
      {"uniqueness round trip", [] { return suite("roundtrip", 20.0); }},
      {"nonuniqueness construction", [] { return suite("nonuniq", 0.0); }},
      {"asymptotic limits", limits},
      {"oracle equivalence", [] { return suite("oracle", 0.0); }},
      {"determinism and runtime", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu %-28s %s  %s\n", k + 1, criteria[k].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
