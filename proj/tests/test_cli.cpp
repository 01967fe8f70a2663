#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "shellrecon/io.hpp"

namespace fs = std::filesystem;
using namespace shellrecon;

namespace {

struct CliResult {
  int status = -1;
  std::string out;
};

CliResult run(const std::string& args, bool with_stderr = false) {
  const std::string cmd =
      std::string(SHELLRECON_CLI) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("shellrecon_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    BoundaryData g = BoundaryData::fourier();
    g.set({0, 0}, 0.5);
    g.set({1, 0}, 1.0);
    g.set({2, 0}, 0.25);
    std::ofstream(dir_ / "g.json") << io::boundary_to_json(g);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ForwardMatchesLibrary) {
  const CliResult r = run("forward --dim 2 --r1 0.5 --sigma1 2 --g " + path("g.json") + " --out " + path("t.json"));
  ASSERT_EQ(r.status, 0);
  const BoundaryData trace = io::boundary_from_json(slurp(dir_ / "t.json"));
  const BoundaryData g = io::boundary_from_json(slurp(dir_ / "g.json"));
  const BoundaryData expect = dirichlet_trace({Dimension::Two, 0.5, 2.0}, g);
  EXPECT_EQ(trace.coefficients, expect.coefficients);
}

TEST_F(Cli, ForwardReferenceTrace) {
  const CliResult r = run("forward --dim 2 --r1 0.3 --sigma1 1 --g " + path("g.json"));
  ASSERT_EQ(r.status, 0);
  const BoundaryData trace = io::boundary_from_json(r.out);
  EXPECT_NEAR(trace.get({1, 0}).real(), reference_symbol(Dimension::Two, 1), 1e-15);
}

TEST_F(Cli, MissingRequiredOption) {
  const CliResult r = run("forward --dim 2 --sigma1 2 --g " + path("g.json"), true);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("--r1"), std::string::npos);
}

TEST_F(Cli, BadInputs) {
  EXPECT_EQ(run("forward --dim 2 --r1 1.5 --sigma1 2 --g " + path("g.json")).status, 2);
  EXPECT_EQ(run("forward --dim 2 --r1 0.5 --sigma1 2 --g " + path("missing.json")).status, 2);
  EXPECT_EQ(run("forward --dim 3 --r1 0.5 --sigma1 2 --g " + path("g.json")).status, 2);
  EXPECT_EQ(run("nosuchcommand").status, 2);
}

TEST_F(Cli, ForwardInvertPipeline) {
  const CliResult r = run("forward --dim 2 --r1 0.5 --sigma1 2 --measurement --g " + path("g.json") +
                    " | " + SHELLRECON_CLI + " invert --r1 0.5 --measurement -");
  ASSERT_EQ(r.status, 0);
  const auto pos = r.out.find("\"sigma1\":");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_NEAR(std::stod(r.out.substr(pos + 9)), 2.0, 2e-8);
}

TEST_F(Cli, InvertReferenceAndSeparateFiles) {
  ASSERT_EQ(run("forward --dim 2 --r1 0.5 --sigma1 1 --g " + path("g.json") + " --out " + path("t.json")).status, 0);
  const CliResult r = run("invert --r1 0.5 --g " + path("g.json") + " --trace " + path("t.json") +
                    " --e-tilde 0.5");
  ASSERT_EQ(r.status, 0);
  const auto pos = r.out.find("\"sigma1\":");
  EXPECT_NEAR(std::stod(r.out.substr(pos + 9)), 1.0, 1e-10);
  EXPECT_NE(r.out.find("u_tilde_core"), std::string::npos);
}

TEST_F(Cli, CorruptedTraceIsInconsistent) {
  ASSERT_EQ(run("forward --dim 2 --r1 0.5 --sigma1 2 --g " + path("g.json") + " --out " + path("t.json")).status, 0);
  BoundaryData t = io::boundary_from_json(slurp(dir_ / "t.json"));
  t.set({2, 0}, 2.0 * t.get({2, 0}));
  std::ofstream(dir_ / "bad.json") << io::boundary_to_json(t);
  EXPECT_EQ(run("invert --r1 0.5 --g " + path("g.json") + " --trace " + path("bad.json")).status, 4);
}

TEST_F(Cli, NdmapTableAndSweep) {
  CliResult r = run("ndmap --dim 3 --r1 0.4 --sigma1 0.25 --nmax 64");
  ASSERT_EQ(r.status, 0);
  const NdSymbolTable t = io::symbol_table_from_csv(Dimension::Three, r.out);
  EXPECT_EQ(t.symbols.size(), 65u);

  r = run("ndmap --dim 2 --r1 0.5 --sigma1 2 --nmax 0");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(io::symbol_table_from_csv(Dimension::Two, r.out).symbols.size(), 1u);

  r = run("ndmap --r1 0.5 --sweep sigma1:2,1.5,1.25,1.125");
  ASSERT_EQ(r.status, 0);
  const auto rows = io::sweep_rows_from_csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_LT(rows[k].norm, rows[k - 1].norm);
}

TEST_F(Cli, Nonuniq) {
  CliResult r = run("nonuniq --r1 0.5 --sigma1 1 --r2 0.7 --n 1");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"roots\""), std::string::npos);
  r = run("nonuniq --r1 0.5 --sigma1 2 --r2 0.7 --n 1");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"verified\": true"), std::string::npos);
  EXPECT_EQ(run("nonuniq --r1 0.5 --sigma1 2 --r2 0.7 --n 1 --sigma2-range 10,11").status, 5);
}

TEST_F(Cli, VerifySingleSuite) {
  const CliResult r = run("verify --suite wronskian");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("wronskian"), std::string::npos);
  EXPECT_EQ(r.out.find("roundtrip"), std::string::npos);
}

TEST_F(Cli, RepeatedRunsAreByteIdentical) {
  const std::string args = "ndmap --dim 2 --r1 0.5 --sigma1 2 --nmax 32";
  EXPECT_EQ(run(args).out, run(args).out);
  const std::string inv = "forward --dim 2 --r1 0.5 --sigma1 3 --measurement --g " + path("g.json") +
                          " | " + SHELLRECON_CLI + " invert --r1 0.5 --measurement - --noise 1e-3 --seed 7";
  EXPECT_EQ(run(inv).out, run(inv).out);
}
