#include "shellrecon/io.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "shellrecon/errors.hpp"
#include "shellrecon/format.hpp"

namespace shellrecon::io {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field \"") + key + "\" has the wrong type");
  }
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json boundary_json(const BoundaryData& data) {
  json modes = json::array();
  for (const auto& [mode, value] : data.coefficients) {
    json m;
    m["n"] = mode.n;
    if (data.dimension == Dimension::Three) m["m"] = mode.m;
    m["re"] = value.real();
    m["im"] = value.imag();
    modes.push_back(m);
  }
  return {{"dimension", as_int(data.dimension)},
          {"basis", data.basis == Basis::Fourier ? "fourier" : "spherical_harmonic"},
          {"modes", modes}};
}

BoundaryData boundary_from(const json& j) {
  const int dim = field<int>(j, "dimension");
  if (dim != 2 && dim != 3) throw DomainError("boundary data: dimension must be 2 or 3");
  BoundaryData data = BoundaryData::empty_like(dim == 2 ? Dimension::Two : Dimension::Three);
  if (j.contains("basis")) {
    const std::string basis = field<std::string>(j, "basis");
    const std::string expected = dim == 2 ? "fourier" : "spherical_harmonic";
    if (basis != expected) {
      throw DomainError("boundary data: basis \"" + basis + "\" does not match dimension " +
                        std::to_string(dim));
    }
  }
  const json modes = field<json>(j, "modes");
  if (!modes.is_array()) throw ParseError("field \"modes\" must be an array");
  for (const json& m : modes) {
    ModeIndex idx{field<int>(m, "n"), dim == 3 ? field<int>(m, "m") : 0};
    if (dim == 2 && m.contains("m") && field<int>(m, "m") != 0) {
      throw IndexError("boundary data: 2-D modes carry no m index");
    }
    const double re = field<double>(m, "re");
    const double im = m.contains("im") ? field<double>(m, "im") : 0.0;
    if (data.coefficients.count(idx)) throw ParseError("boundary data: duplicate mode");
    data.set(idx, {re, im});
  }
  data.validate();
  return data;
}

json mode_json(Dimension dim, ModeIndex mode) {
  json m;
  m["n"] = mode.n;
  if (dim == Dimension::Three) m["m"] = mode.m;
  return m;
}

json config_json(const ShellConfig& c) { return {{"r1", c.r1}, {"sigma1", c.sigma1}}; }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw ParseError("bad number \"" + s + "\"");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad number \"" + s + "\"");
  }
}

int to_int(const std::string& s) {
  const double v = to_double(s);
  if (v != std::floor(v) || std::fabs(v) > 1e9) throw ParseError("bad integer \"" + s + "\"");
  return static_cast<int>(v);
}

// Data rows of a CSV with the given header; each row must have `columns` cells.
std::vector<std::vector<std::string>> csv_rows(const std::string& text, const std::string& header,
                                               std::size_t columns) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw ParseError("CSV: expected header \"" + header + "\"");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != columns) throw ParseError("CSV: wrong number of cells in \"" + line + "\"");
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

std::string boundary_to_json(const BoundaryData& data) { return boundary_json(data).dump(); }

BoundaryData boundary_from_json(const std::string& text) { return boundary_from(parse(text)); }

std::string measurement_to_json(const Measurement& meas) {
  return json{{"neumann", boundary_json(meas.neumann)},
              {"dirichlet", boundary_json(meas.dirichlet)}}
      .dump();
}

Measurement measurement_from_json(const std::string& text) {
  const json j = parse(text);
  Measurement meas{boundary_from(field<json>(j, "neumann")),
                   boundary_from(field<json>(j, "dirichlet"))};
  meas.validate();
  return meas;
}

std::string recovery_to_json(const RecoveryResult& result, Dimension dim,
                             const std::optional<PotentialReport>& potential) {
  json per_mode = json::array();
  for (const PerModeEstimate& e : result.per_mode) {
    json m = mode_json(dim, e.mode);
    m["lambda"] = e.lambda;
    m["sigma1"] = number_or_null(e.sigma1);
    m["residual"] = number_or_null(e.residual);
    m["condition"] = number_or_null(e.condition);
    m["usable"] = e.usable;
    if (!e.note.empty()) m["note"] = e.note;
    per_mode.push_back(m);
  }
  json out;
  out["sigma1"] = result.sigma1;
  out["mode_used"] = mode_json(dim, result.mode_used);
  out["residual"] = result.residual;
  out["bracket"] = {result.bracket.first, result.bracket.second};
  out["per_mode"] = per_mode;
  if (potential) {
    out["potential"] = {{"e_tilde", potential->e_tilde},
                        {"u_tilde_core", potential->u_tilde_core},
                        {"u_tilde_shell", potential->u_tilde_shell}};
  }
  return out.dump(2);
}

std::string nonuniq_to_json(const std::vector<NonuniqPair>& pairs) {
  if (pairs.empty()) throw DomainError("nonuniq_to_json: no pairs");
  const NonuniqPair& p = pairs.front();
  json gaps = json::array();
  for (const auto& [n, gap] : p.cross_mode_gaps) gaps.push_back({{"n", n}, {"gap", gap}});
  json roots = json::array();
  for (const NonuniqPair& q : pairs) roots.push_back(q.config_b.sigma1);
  json out;
  out["dimension"] = as_int(p.config_a.dimension);
  out["a"] = config_json(p.config_a);
  out["b"] = config_json(p.config_b);
  out["n"] = p.mode_n;
  out["det_residual"] = p.det_residual;
  out["symbol_gap"] = p.symbol_gap;
  out["verified"] = p.verified;
  out["roots"] = roots;
  out["cross_mode_gaps"] = gaps;
  return out.dump(2);
}

std::string wave_samples_to_csv(Dimension dim, const EvaluationGrid& grid,
                                const std::vector<WaveSample>& samples) {
  if (grid.size() != samples.size()) throw DomainError("wave_samples_to_csv: size mismatch");
  std::string out = dim == Dimension::Two ? "r,phi,re,im\n" : "r,phi,theta,re,im\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out += format_double(grid[k].r) + "," + format_double(grid[k].phi) + ",";
    if (dim == Dimension::Three) out += format_double(grid[k].theta) + ",";
    out += format_double(samples[k].value.real()) + "," + format_double(samples[k].value.imag()) +
           "\n";
  }
  return out;
}

std::vector<WaveRow> wave_samples_from_csv(Dimension dim, const std::string& text) {
  const bool three = dim == Dimension::Three;
  std::vector<WaveRow> out;
  for (const auto& cells :
       csv_rows(text, three ? "r,phi,theta,re,im" : "r,phi,re,im", three ? 5 : 4)) {
    WaveRow row;
    std::size_t k = 0;
    row.point.r = to_double(cells[k++]);
    row.point.phi = to_double(cells[k++]);
    if (three) row.point.theta = to_double(cells[k++]);
    row.re = to_double(cells[k++]);
    row.im = to_double(cells[k++]);
    out.push_back(row);
  }
  return out;
}

NdSymbolTable symbol_table_from_csv(Dimension dim, const std::string& text) {
  NdSymbolTable table;
  table.dimension = dim;
  for (const auto& cells : csv_rows(text, "n,lambda", 2)) {
    if (to_int(cells[0]) != static_cast<int>(table.symbols.size())) {
      throw ParseError("symbol table: modes must be 0, 1, 2, ...");
    }
    table.symbols.push_back(to_double(cells[1]));
  }
  table.n_max = static_cast<int>(table.symbols.size()) - 1;
  return table;
}

std::vector<SweepRow> sweep_rows_from_csv(const std::string& text) {
  std::vector<SweepRow> out;
  for (const auto& cells : csv_rows(text, "parameter,norm,argmax_mode", 3)) {
    SweepRow row;
    row.parameter = to_double(cells[0]);
    row.norm = to_double(cells[1]);
    row.argmax_mode = to_int(cells[2]);
    out.push_back(row);
  }
  return out;
}

std::string convergence_to_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "grid_points,h,error,observed_order\n";
  for (const ConvergenceRow& r : rows) {
    out += std::to_string(r.grid_points) + "," + format_double(r.h) + "," +
           format_double(r.error) + "," + format_double(r.observed_order) + "\n";
  }
  return out;
}

}  // namespace shellrecon::io
