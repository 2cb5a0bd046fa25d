#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "kaf/bench.hpp"

namespace kaf {

/// Raised for any schema violation; the message names the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses a JSON experiment config. Unknown keys are rejected at every level.
/// The documented schema lives in docs/config_schema.md.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
ExperimentConfig parse_experiment_config(const std::string& json_text);

/// Rescales a config to the full benchmark scale (15000 train / 1000 test /
/// 50 trials).
void apply_full_scale(ExperimentConfig& config);

/// FNV-1a 64-bit over the canonical serialized form; stamped into result
/// metadata so outputs can be matched to the exact config that produced them.
std::uint64_t config_fingerprint(const ExperimentConfig& config);

/// Canonical JSON serialization (round-trips through the parser).
std::string serialize_experiment_config(const ExperimentConfig& config);

}  // namespace kaf
