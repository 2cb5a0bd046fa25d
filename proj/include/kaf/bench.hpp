#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "kaf/filters.hpp"
#include "kaf/noise.hpp"
#include "kaf/random.hpp"

namespace kaf {

/// The identification plant: an FIR filter followed by the memoryless
/// nonlinearity r -> r - 0.9 r^2, driven by WGN of variance input_variance.
struct PlantConfig {
    std::vector<double> fir_taps = {0.1, 0.2, 0.3, 0.4, 0.5, 0.4, 0.3, 0.2, 0.1};
    double input_variance = 1.0;

    void validate() const;
};

using NoiseModel = std::variant<BgParams, SasParams>;

struct ExperimentConfig {
    FilterConfig filter;
    PlantConfig plant;
    NoiseModel noise = BgParams{};
    long train_len = 3000;
    long test_len = 500;
    int trials = 10;
    std::uint64_t seed = 0;
    int embed_dim = 9;    // time-embedding length of the input vector
    int eval_every = 10;  // test-MSE cadence, in iterations
    bool noisy_test = false;

    void validate() const;
};

/// r = sum_k taps[k] * history[k] (history most-recent-first), then
/// r - 0.9 r^2 + v. History shorter than the tap count is invalid; the
/// harness zero-pads its own warm-up.
double plant_output(const PlantConfig& config, std::span<const double> input_history,
                    double v);

struct Sample {
    std::vector<double> input;  // embed_dim most recent plant inputs
    double target;
};

struct Dataset {
    std::vector<Sample> train;
    std::vector<Sample> test;
};

/// Draws the input signal, runs the plant over it (test segment continues the
/// training segment), and contaminates training targets with the configured
/// noise. Test targets stay noise-free unless noisy_test is set.
Dataset make_dataset(const ExperimentConfig& config, RandomStream& stream);

struct TrialResult {
    std::vector<long> iterations;
    std::vector<double> test_mse;
    std::vector<long> network_size;
    std::vector<double> lambda_trace;  // lambda used at each recorded iteration
    double lambda_first = 0.0;         // lambda used at iteration 1
    double lambda_min = 0.0;           // over all iterations, not just recorded ones
    double lambda_max = 0.0;
    bool diverged = false;
    long diverged_at = -1;
};

/// One online run over a trial's dataset. Test MSE is maintained
/// incrementally: appending a center adds its kernel row against the test
/// inputs, merging reuses the cached row. A non-finite error, prediction or
/// MSE flags the trial as diverged and truncates its trace.
TrialResult run_trial(const ExperimentConfig& config, int trial_id);

struct LearningCurve {
    std::vector<long> iterations;
    std::vector<double> test_mse;      // pointwise mean over non-diverged trials
    std::vector<double> network_size;  // mean, fractional
    std::vector<double> lambda_mean;
    int trials_total = 0;
    int diverged_trials = 0;
    std::vector<TrialResult> per_trial;
};

struct AllTrialsDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Monte Carlo average over trials 0..trials-1 (stream_id = trial index).
/// Trials run in parallel; traces are averaged in trial order, so the result
/// is independent of scheduling. Diverged trials are counted and excluded.
/// Throws AllTrialsDiverged when nothing is left to average.
LearningCurve run_experiment(const ExperimentConfig& config, int max_threads = 0);

}  // namespace kaf
