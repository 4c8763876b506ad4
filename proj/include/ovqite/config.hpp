#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "ovqite/evolution.hpp"
#include "ovqite/tfim.hpp"

namespace ovqite {

/// Everything one `run` needs. Defaults reproduce the 10-qubit benchmark.
///
/// The file format is a small TOML subset: `[section]` headers and
/// `key = value` lines, where values are numbers, booleans or quoted strings.
/// `#` starts a comment. Unknown sections and keys are rejected.
struct ExperimentConfig {
  TfimParams model{10, 1.0, 0.5, true};
  std::size_t layers = 5;
  EvolutionConfig evolution;
  std::size_t threads = 0;  // 0 keeps the OpenMP default
  std::string output_path = "out";
  std::string output_format = "csv";
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ExperimentConfig& cfg);

/// FNV-1a over the serialized form, as 16 hex digits. Ignores threads and
/// output path.
std::string config_hash(const ExperimentConfig& cfg);

/// Seed override read from OVQITE_SEED, if set.
std::optional<std::uint64_t> seed_from_environment();

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

}  // namespace ovqite
