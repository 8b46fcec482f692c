#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "anisodnl/config.hpp"
#include "anisodnl/solver.hpp"

namespace anisodnl::app {

/// Scenario names accepted by `run`.
const std::vector<std::string>& scenario_names();

struct RunConfig {
  std::string scenario;
  ConfigDocument document;  ///< preset-expanded problem and run keys
  std::vector<std::size_t> grid;
  SolverConfig solver;
  std::vector<int> ks;
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  double c_struct = 1.0;
  double constant_value = 1.0;
  std::size_t levels = 3;   ///< refinement levels (manufactured)
  std::size_t pairs = 5;    ///< randomized pairs (comparison)
  std::size_t j_max = 12;   ///< De Giorgi levels
  std::vector<double> level_M;  ///< level thresholds; empty selects the report's M
  double mollifier_h = 0.0;     ///< 0 selects T / 8
  bool parallel = false;
};

/// Interprets the run keys of a document. Throws ConfigError.
RunConfig make_run_config(const ConfigDocument& doc);

struct Artifact {
  std::filesystem::path path;  ///< relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunResult {
  bool pass = false;
  nlohmann::json report;
  std::vector<Artifact> artifacts;  ///< every file written, manifest excluded
};

/// Runs one scenario, writes its artifacts and a manifest.json into
/// out_dir. Throws ConfigError, SolveError or DomainError.
RunResult run(const RunConfig& config);

/// Admissibility and capability report for the problem keys of a document.
nlohmann::json validate(const ConfigDocument& doc, std::size_t samples, std::uint64_t seed);

/// Hex SHA-256 of a file.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace anisodnl::app
