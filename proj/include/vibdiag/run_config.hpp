#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "vibdiag/pipeline.hpp"

namespace vibdiag {

inline constexpr int kRunConfigVersion = 1;

/// Declarative run description: where the record lives, how to read it,
/// where outputs go and every pipeline knob. Loaded from a flat JSON object;
/// unknown keys and mistyped values are rejected.
struct RunConfig {
  std::optional<std::filesystem::path> input;
  std::optional<std::string> format;  // "csv" | "wav"; guessed from extension when absent
  int channel = 0;
  std::optional<double> rate_hz;
  std::optional<double> fault_freq_hz;
  std::optional<std::filesystem::path> out_dir;
  std::uint64_t seed = 0;
  PipelineConfig pipeline;

  /// Pipeline config with the seed and fault frequency folded in.
  PipelineConfig resolved_pipeline() const;
};

/// Throws Configuration on unknown keys, wrong types or invalid values.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

/// Round-trippable echo of every field, used in report.json.
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace vibdiag
