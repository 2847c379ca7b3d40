#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "seesaw/drive.hpp"
#include "seesaw/dynamics.hpp"
#include "seesaw/params.hpp"

namespace seesaw {

/// Everything a run needs.
struct RunConfig {
  DeviceParams params;
  DriveConfig drive;
  SimConfig sim;
};

/// Layered flat key-value configuration.
///
/// Text form: one "section.key = value" per line, '#' starts a comment. A
/// JSON object with the same flat keys is accepted too. Frequencies and
/// rates are rad/s; a "_hz" suffix on any of them takes cycles/s and is
/// converted once here. Later layers replace earlier keys that set the same
/// quantity, including alternate spellings (lambda vs omega, Q vs gamma).
/// Unknown keys are errors.
class ConfigBuilder {
 public:
  /// Adds a named preset layer ("paper_device"). Throws ValidationError.
  ConfigBuilder& preset(std::string_view name);
  ConfigBuilder& text(std::string_view text, std::string_view source = "config");
  ConfigBuilder& file(const std::filesystem::path& path);
  /// "key=value"; throws ConfigError on malformed input.
  ConfigBuilder& set(std::string_view assignment);

  /// Resolves aliases and derived defaults and validates the device.
  /// Throws ConfigError (unknown/duplicate/conflicting keys, bad values)
  /// or ValidationError (invariant violations).
  RunConfig resolve() const;

  struct Entry {
    std::string key;
    std::string value;
    std::string source;
    int line = 0;
    int layer = 0;
  };
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  void add(Entry e);
  std::vector<Entry> entries_;
  int layer_ = 0;
};

/// Primary-key text of a preset.
std::string preset_text(std::string_view name);
std::vector<std::string> preset_names();

RunConfig load_preset(std::string_view name);

/// Canonical echo: every canonical key, numbers in round-trip form. Loading
/// the echo reproduces the RunConfig bit for bit.
std::string canonical_config(const RunConfig& cfg);

/// Canonical keys with a one-line description each.
struct KeyDoc {
  std::string key;
  std::string doc;
};
const std::vector<KeyDoc>& config_schema();

}  // namespace seesaw
