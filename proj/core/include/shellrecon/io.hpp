#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shellrecon/boundary_data.hpp"
#include "shellrecon/forward.hpp"
#include "shellrecon/inverse.hpp"
#include "shellrecon/nd_map.hpp"
#include "shellrecon/oracle.hpp"

namespace shellrecon::io {

// JSON. Parsers throw ParseError on malformed text and DomainError/IndexError on
// well-formed text that describes an invalid object.

/// {"dimension":2,"basis":"fourier","modes":[{"n":1,"re":1.0,"im":0.0}]}; 3-D modes add "m".
std::string boundary_to_json(const BoundaryData& data);
BoundaryData boundary_from_json(const std::string& text);

/// {"neumann":{...},"dirichlet":{...}}
std::string measurement_to_json(const Measurement& meas);
Measurement measurement_from_json(const std::string& text);

std::string recovery_to_json(const RecoveryResult& result, Dimension dim,
                             const std::optional<PotentialReport>& potential = std::nullopt);

/// First pair as the top-level object, every root sigma2 under "roots".
std::string nonuniq_to_json(const std::vector<NonuniqPair>& pairs);

// CSV with 17 significant digits.

std::string wave_samples_to_csv(Dimension dim, const EvaluationGrid& grid,
                                const std::vector<WaveSample>& samples);

struct WaveRow {
  GridPoint point;
  double re = 0.0;
  double im = 0.0;
};
std::vector<WaveRow> wave_samples_from_csv(Dimension dim, const std::string& text);

NdSymbolTable symbol_table_from_csv(Dimension dim, const std::string& text);
std::vector<SweepRow> sweep_rows_from_csv(const std::string& text);

std::string convergence_to_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace shellrecon::io
