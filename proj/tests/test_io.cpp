#include <gtest/gtest.h>

#include <cmath>

#include "shellrecon/errors.hpp"
#include "shellrecon/io.hpp"

using namespace shellrecon;

TEST(Json, BoundaryRoundTrip) {
  BoundaryData g = BoundaryData::spherical();
  g.set({0, 0}, 0.1);
  g.set({3, -2}, {1.0 / 3.0, -2e-300});
  const BoundaryData back = io::boundary_from_json(io::boundary_to_json(g));
  EXPECT_EQ(back.dimension, Dimension::Three);
  EXPECT_EQ(back.coefficients, g.coefficients);
}

TEST(Json, BoundaryErrors) {
  EXPECT_THROW(io::boundary_from_json("{"), ParseError);
  EXPECT_THROW(io::boundary_from_json(R"({"dimension":2})"), ParseError);
  EXPECT_THROW(io::boundary_from_json(R"({"dimension":4,"modes":[]})"), DomainError);
  EXPECT_THROW(io::boundary_from_json(R"({"dimension":3,"modes":[{"n":1,"m":2,"re":1}]})"),
               IndexError);
  EXPECT_THROW(io::boundary_from_json(R"({"dimension":2,"basis":"spherical_harmonic","modes":[]})"),
               DomainError);
  EXPECT_THROW(io::boundary_from_json(R"({"dimension":2,"modes":[{"n":1,"re":"x"}]})"), ParseError);
}

TEST(Json, MeasurementRoundTrip) {
  BoundaryData g = BoundaryData::fourier();
  g.set({1, 0}, 1.0);
  g.set({-2, 0}, {0.0, 0.5});
  const Measurement m = Measurement::synthesize({Dimension::Two, 0.5, 2.0}, g);
  const Measurement back = io::measurement_from_json(io::measurement_to_json(m));
  EXPECT_EQ(back.neumann.coefficients, m.neumann.coefficients);
  EXPECT_EQ(back.dirichlet.coefficients, m.dirichlet.coefficients);
}

TEST(Json, RecoveryFields) {
  BoundaryData g = BoundaryData::fourier();
  g.set({1, 0}, 1.0);
  const RecoveryResult r = recover_sigma(Measurement::synthesize({Dimension::Two, 0.5, 2.0}, g), 0.5);
  const std::string text = io::recovery_to_json(r, Dimension::Two, potential_report(r.sigma1, 0.0));
  for (const char* key : {"\"sigma1\"", "\"mode_used\"", "\"residual\"", "\"bracket\"",
                          "\"per_mode\"", "\"u_tilde_core\""}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
}

TEST(Json, NonuniqFields) {
  const auto pairs = find_nonuniq_pairs({Dimension::Two, 0.5, 2.0}, 0.7, 1);
  const std::string text = io::nonuniq_to_json(pairs);
  for (const char* key : {"\"det_residual\"", "\"symbol_gap\"", "\"verified\"", "\"roots\""}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
  EXPECT_THROW(io::nonuniq_to_json({}), DomainError);
}

TEST(Csv, WaveRoundTripIsExact) {
  BoundaryData g = BoundaryData::spherical();
  g.set({1, 1}, {0.3, 0.1});
  const ShellConfig c{Dimension::Three, 0.4, 0.25};
  const EvaluationGrid grid{{0.1, 0.2, 0.3}, {0.9, 1.0 / 3.0, 2.0}};
  const auto samples = evaluate_wave(solve_coefficients(c, g), grid);
  const auto rows = io::wave_samples_from_csv(Dimension::Three,
                                              io::wave_samples_to_csv(Dimension::Three, grid, samples));
  ASSERT_EQ(rows.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(rows[k].point.phi, grid[k].phi);
    EXPECT_EQ(rows[k].re, samples[k].value.real());
    EXPECT_EQ(rows[k].im, samples[k].value.imag());
  }
}

TEST(Csv, SymbolAndSweepRoundTrip) {
  const NdSymbolTable t = symbol_table({Dimension::Two, 0.5, 2.0}, 10);
  EXPECT_EQ(io::symbol_table_from_csv(Dimension::Two, symbol_table_to_csv(t)).symbols, t.symbols);
  const SweepTable s = norm_sweep({Dimension::Two, 0.5, 2.0}, SweepAxis::R1ToZero, {0.4, 0.2});
  const auto rows = io::sweep_rows_from_csv(sweep_to_csv(s));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].norm, s.rows[1].norm);
  EXPECT_EQ(rows[1].argmax_mode, s.rows[1].argmax_mode);
}

TEST(Csv, Errors) {
  EXPECT_THROW(io::sweep_rows_from_csv("a,b\n"), ParseError);
  EXPECT_THROW(io::sweep_rows_from_csv("parameter,norm,argmax_mode\n1,2\n"), ParseError);
  EXPECT_THROW(io::symbol_table_from_csv(Dimension::Two, "n,lambda\n1,0.5\n"), ParseError);
  EXPECT_THROW(io::symbol_table_from_csv(Dimension::Two, "n,lambda\n0,abc\n"), ParseError);
}

TEST(Csv, Convergence) {
  const auto rows = convergence_study({{Dimension::Two, 0.5, 2.0}, 0, 1000}, {1000, 2000, 4000});
  const std::string text = io::convergence_to_csv(rows);
  EXPECT_EQ(text.rfind("grid_points,h,error,observed_order\n", 0), 0u);
  EXPECT_NE(text.find("nan"), std::string::npos);
}
