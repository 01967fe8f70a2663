#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace shellrecon::verify {

enum class Level { Quick, Full };

/// Pass thresholds. The defaults are the library's accuracy contract.
struct Tolerances {
  double identity = 1e-11;
  double wronskian = 1e-12;       // |W + 1/x| x
  double finite_difference = 1e-6;
  double oracle = 1e-5;
  double order_lo = 1.8;
  double order_hi = 2.2;
  double roundtrip = 1e-8;
  double nonuniq = 1e-10;
  std::uint64_t seed = 20240611;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t checks = 0;
  std::size_t failures = 0;
  /// Largest value of the suite's primary metric (residual, error, ...).
  double worst = 0.0;
  std::string detail;
};

/// identities, wronskian, lemma1, monotonicity, oracle, roundtrip, nonuniq
const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown name.
SuiteResult run_suite(const std::string& name, Level level, const Tolerances& tol = {});

/// Fixed-width table, one row per suite, no timings (output is deterministic).
std::string format_table(const std::vector<SuiteResult>& results);

}  // namespace shellrecon::verify
