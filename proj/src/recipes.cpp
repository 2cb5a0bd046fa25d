#include "kaf/recipes.hpp"

#include <algorithm>
#include <cmath>

#include "kaf/config.hpp"
#include "kaf/report.hpp"

namespace kaf {

namespace fs = std::filesystem;

std::vector<RecipeReport> validate_recipes(const fs::path& configs_dir) {
    std::vector<fs::path> paths;
    for (const auto& entry : fs::recursive_directory_iterator(configs_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            paths.push_back(entry.path());
        }
    }
    std::sort(paths.begin(), paths.end());

    std::vector<RecipeReport> reports;
    for (const auto& path : paths) {
        RecipeReport rep;
        rep.config = path;
        try {
            const ExperimentConfig cfg = load_experiment_config(path);
            const LearningCurve curve = run_experiment(cfg);
            for (const auto& trial : curve.per_trial) {
                if (trial.diverged) continue;
                for (std::size_t i = 1; i < trial.network_size.size(); ++i) {
                    if (trial.network_size[i] < trial.network_size[i - 1]) {
                        throw std::runtime_error("network-size trace decreased");
                    }
                }
            }
            if (curve.iterations.empty()) {
                throw std::runtime_error("run produced an empty learning curve");
            }
            rep.passed = true;
            rep.message = "final mse " + std::to_string(curve.test_mse.back()) +
                          ", final size " + std::to_string(curve.network_size.back()) +
                          ", diverged " + std::to_string(curve.diverged_trials) + "/" +
                          std::to_string(curve.trials_total);
        } catch (const std::exception& e) {
            rep.passed = false;
            rep.message = e.what();
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

bool all_recipes_passed(const std::vector<RecipeReport>& reports) {
    return !reports.empty() &&
           std::all_of(reports.begin(), reports.end(),
                       [](const RecipeReport& r) { return r.passed; });
}

}  // namespace kaf
