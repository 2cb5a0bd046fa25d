#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace kaf {

struct RecipeReport {
    std::filesystem::path config;
    bool passed = false;
    std::string message;  // failure reason, or a one-line run summary
};

/// Parses and runs every shipped config under `configs_dir` (recursively) at
/// its own scale. A recipe passes when the config parses, the run completes,
/// and the network-size trace is nondecreasing.
std::vector<RecipeReport> validate_recipes(const std::filesystem::path& configs_dir);

bool all_recipes_passed(const std::vector<RecipeReport>& reports);

}  // namespace kaf
