#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kaf/analysis.hpp"
#include "kaf/bench.hpp"
#include "kaf/config.hpp"

namespace kaf {

/// Serialized learning curve, header `iteration,test_mse,network_size,lambda_mean`.
/// Numbers are rendered with shortest round-trip formatting, so equal curves
/// produce byte-identical text.
std::string learning_curve_csv(const LearningCurve& curve);

std::string noise_samples_csv(const std::vector<double>& samples);

std::string ecr_records_csv(const std::vector<EcrRecord>& records);

/// Run metadata written next to each result CSV.
struct RunMetadata {
    std::uint64_t config_fingerprint = 0;
    std::uint64_t seed = 0;
    int trials_total = 0;
    int diverged_trials = 0;
    double wall_clock_seconds = 0.0;
    bool full_scale = false;
};

std::string run_metadata_json(const RunMetadata& meta);

/// Writes via a temporary file in the target directory followed by a rename;
/// a failed run never leaves a partial artifact behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace kaf
