#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anisodnl/model.hpp"

namespace anisodnl {

struct ConfigEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;  ///< 1-based; 0 for programmatic overrides
};

/// Flat `key = value` document. `#` starts a comment; blank lines are
/// ignored; when a key repeats, the last occurrence wins.
class ConfigDocument {
 public:
  static ConfigDocument parse(std::string_view text);
  static ConfigDocument load(const std::filesystem::path& path);

  const ConfigEntry* find(std::string_view key) const;
  bool contains(std::string_view key) const { return find(key) != nullptr; }
  /// Appends an override that shadows earlier entries.
  void set(std::string key, std::string value);
  const std::vector<ConfigEntry>& entries() const noexcept { return entries_; }

  /// Copy with the named preset's entries placed before this document's own,
  /// so that explicit keys override the preset. No-op without `preset`.
  ConfigDocument with_preset() const;

 private:
  std::vector<ConfigEntry> entries_;
};

double config_real(const ConfigEntry& e);
long config_int(const ConfigEntry& e);
bool config_bool(const ConfigEntry& e);
std::vector<double> config_reals(const ConfigEntry& e);
std::vector<long> config_ints(const ConfigEntry& e);

/// Names of the shipped problem presets.
std::vector<std::string> preset_names();
/// Config text of a preset; throws ConfigError for unknown names.
std::string preset_text(std::string_view name);

/// Builds the continuous problem from the problem keys of a document (after
/// preset expansion). Throws ConfigError with line and key on bad input.
ProblemSpec build_problem(const ConfigDocument& doc);

/// The exact solution named by `exact`, if any.
std::optional<SpaceTimeFn> build_exact(const ConfigDocument& doc);

}  // namespace anisodnl
