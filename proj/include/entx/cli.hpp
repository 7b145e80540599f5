#pragma once

// Run configuration, sweeps and CSV output behind the entx tool.

#include <json.hpp>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "entx/numerics.hpp"

namespace entx::cli {

inline constexpr const char* kVersion = "entx 1.0.0";

struct Sweep {
  std::string param;
  std::vector<double> values;
};

struct RunConfig {
  std::string scenario;  // free | dirichlet | potential | thermal | verify
  nlohmann::json params;  // every scenario parameter, defaults filled in
  std::optional<Sweep> sweep;
  numerics::QuadratureSpec quad;
  numerics::SeriesSpec series;
  int bessel_cap = 1024;
  nlohmann::json resolved;  // what goes into the CSV header
};

/// Reads PATH (JSON; empty path = {}), applies `key=value` overrides
/// (dotted keys into the document, bare keys into "params"; values parsed
/// as JSON, falling back to strings).
nlohmann::json load_document(const std::string& path, const std::vector<std::string>& sets);

/// Validates the document for `scenario` (overriding doc["scenario"] when
/// non-empty): unknown keys, sweep shape and every grid point are checked
/// before anything is computed. Throws PreconditionError.
RunConfig resolve(const nlohmann::json& doc, const std::string& scenario);

std::vector<double> grid(double start, double stop, int count, const std::string& spacing);

struct Table {
  std::vector<std::string> header;             // '#' lines without the prefix
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // formatted cells
};

/// Evaluates every grid point with up to `jobs` threads; rows come out in
/// grid order. Per-point numerical failures land in the flags column.
Table run(const RunConfig& config, int jobs = 1);

void write_csv(const Table& table, std::ostream& out);

/// Fixed-format number used in every table.
std::string format_number(double x);

/// Writes figN_curveM.csv (and figN_asymptotes.csv for fig4/fig5) into
/// `out_dir`; id is fig2..fig6 or "all". Returns the files written.
std::vector<std::filesystem::path> emit_figure_data(const std::string& id,
                                                    const std::filesystem::path& out_dir,
                                                    int jobs,
                                                    const numerics::QuadratureSpec& quad = {});

}  // namespace entx::cli
