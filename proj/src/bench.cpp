#include "kaf/bench.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace kaf {

void PlantConfig::validate() const {
    if (fir_taps.empty()) {
        throw std::invalid_argument("plant fir_taps must be non-empty");
    }
    if (!(input_variance > 0.0)) {
        throw std::invalid_argument("plant input_variance must be > 0");
    }
}

void ExperimentConfig::validate() const {
    filter.validate();
    plant.validate();
    std::visit([](const auto& p) { p.validate(); }, noise);
    if (train_len < 1) throw std::invalid_argument("train_len must be >= 1");
    if (test_len < 1) throw std::invalid_argument("test_len must be >= 1");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (embed_dim < 1) throw std::invalid_argument("embed_dim must be >= 1");
    if (eval_every < 1) throw std::invalid_argument("eval_every must be >= 1");
}

double plant_output(const PlantConfig& config, std::span<const double> input_history,
                    double v) {
    if (input_history.size() < config.fir_taps.size()) {
        throw std::invalid_argument(
            "plant_output: history has " + std::to_string(input_history.size()) +
            " samples, needs " + std::to_string(config.fir_taps.size()));
    }
    double r = 0.0;
    for (std::size_t k = 0; k < config.fir_taps.size(); ++k) {
        r += config.fir_taps[k] * input_history[k];
    }
    return r - 0.9 * r * r + v;
}

Dataset make_dataset(const ExperimentConfig& config, RandomStream& stream) {
    config.validate();
    const long total = config.train_len + config.test_len;
    const double sigma_u = std::sqrt(config.plant.input_variance);

    std::vector<double> signal(static_cast<std::size_t>(total));
    for (double& x : signal) x = sigma_u * stream.normal();

    const std::size_t taps = config.plant.fir_taps.size();
    const std::size_t embed = static_cast<std::size_t>(config.embed_dim);
    const std::size_t hist_len = std::max(taps, embed);

    const auto draw_noise = [&]() -> double {
        if (const auto* bg = std::get_if<BgParams>(&config.noise)) {
            return sample_bg(*bg, stream);
        }
        return sample_sas(std::get<SasParams>(config.noise), stream);
    };

    Dataset ds;
    ds.train.reserve(static_cast<std::size_t>(config.train_len));
    ds.test.reserve(static_cast<std::size_t>(config.test_len));

    // rolling most-recent-first history, zero-padded warm-up
    std::vector<double> history(hist_len, 0.0);
    for (long n = 0; n < total; ++n) {
        for (std::size_t k = hist_len - 1; k > 0; --k) history[k] = history[k - 1];
        history[0] = signal[static_cast<std::size_t>(n)];

        const bool is_train = n < config.train_len;
        double v = 0.0;
        if (is_train || config.noisy_test) v = draw_noise();

        Sample s;
        s.input.assign(history.begin(), history.begin() + static_cast<long>(embed));
        s.target = plant_output(config.plant, history, v);
        (is_train ? ds.train : ds.test).push_back(std::move(s));
    }
    return ds;
}

namespace {

/// Incrementally maintained test-set predictions for a kernel run. Kernel
/// rows are cached only when the algorithm can merge (quantized variants);
/// append-only runs use each row once.
class TestPredictions {
  public:
    TestPredictions(const std::vector<Sample>& test, const KernelParams& kernel,
                    bool cache_rows)
        : test_(test), kernel_(kernel), cache_rows_(cache_rows),
          predictions_(test.size(), 0.0) {}

    void on_append(std::span<const double> center, double coefficient) {
        std::vector<double> row(test_.size());
        for (std::size_t i = 0; i < test_.size(); ++i) {
            row[i] = eval_gaussian(test_[i].input, center, kernel_);
            predictions_[i] += coefficient * row[i];
        }
        if (cache_rows_) rows_.push_back(std::move(row));
    }

    void on_merge(std::size_t index, double delta) {
        const auto& row = rows_[index];
        for (std::size_t i = 0; i < test_.size(); ++i) {
            predictions_[i] += delta * row[i];
        }
    }

    double mse() const {
        double s = 0.0;
        for (std::size_t i = 0; i < test_.size(); ++i) {
            const double e = test_[i].target - predictions_[i];
            s += e * e;
        }
        return s / static_cast<double>(test_.size());
    }

  private:
    const std::vector<Sample>& test_;
    KernelParams kernel_;
    bool cache_rows_;
    std::vector<double> predictions_;
    std::vector<std::vector<double>> rows_;
};

double linear_test_mse(const std::vector<Sample>& test,
                       std::span<const double> weights) {
    double s = 0.0;
    for (const Sample& sample : test) {
        double y = 0.0;
        for (std::size_t k = 0; k < weights.size(); ++k) {
            y += weights[k] * sample.input[k];
        }
        const double e = sample.target - y;
        s += e * e;
    }
    return s / static_cast<double>(test.size());
}

}  // namespace

TrialResult run_trial(const ExperimentConfig& config, int trial_id) {
    RandomStream stream(config.seed, static_cast<std::uint64_t>(trial_id));
    const Dataset ds = make_dataset(config, stream);

    const bool kernel_run = is_kernel_algorithm(config.filter.algorithm);
    const bool quantized = is_quantized_algorithm(config.filter.algorithm);
    FilterState state = make_filter_state(config.filter,
                                          static_cast<std::size_t>(config.embed_dim));
    TestPredictions test_pred(ds.test, config.filter.kernel, quantized);

    TrialResult result;
    bool first = true;
    for (long n = 1; n <= config.train_len; ++n) {
        const Sample& sample = ds.train[static_cast<std::size_t>(n - 1)];
        const StepResult sr = step(state, config.filter, sample.input, sample.target);

        // mirror the network update into the cached test predictions
        if (kernel_run) {
            const double gain = krmn_gain(sr.e, sr.lambda, config.filter.step_size);
            if (sr.appended) {
                test_pred.on_append(state.network.center(state.network.size() - 1), gain);
            } else {
                test_pred.on_merge(sr.merge_index, gain);
            }
        }

        if (first) {
            result.lambda_first = sr.lambda;
            result.lambda_min = result.lambda_max = sr.lambda;
            first = false;
        } else {
            result.lambda_min = std::min(result.lambda_min, sr.lambda);
            result.lambda_max = std::max(result.lambda_max, sr.lambda);
        }

        if (!std::isfinite(sr.e) || !std::isfinite(sr.y)) {
            result.diverged = true;
            result.diverged_at = n;
            break;
        }

        if (n % config.eval_every == 0 || n == config.train_len) {
            const double mse =
                kernel_run ? test_pred.mse() : linear_test_mse(ds.test, state.weights);
            if (!std::isfinite(mse)) {
                result.diverged = true;
                result.diverged_at = n;
                break;
            }
            result.iterations.push_back(n);
            result.test_mse.push_back(mse);
            result.network_size.push_back(
                kernel_run ? static_cast<long>(state.network.size()) : 0);
            result.lambda_trace.push_back(sr.lambda);
        }
    }
    return result;
}

LearningCurve run_experiment(const ExperimentConfig& config, int max_threads) {
    config.validate();

    std::vector<TrialResult> trials(static_cast<std::size_t>(config.trials));
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const int n_threads = max_threads > 0
                              ? std::min(max_threads, config.trials)
                              : std::min<int>(static_cast<int>(hw), config.trials);

    std::atomic<int> next{0};
    const auto worker = [&]() {
        for (;;) {
            const int t = next.fetch_add(1);
            if (t >= config.trials) return;
            trials[static_cast<std::size_t>(t)] = run_trial(config, t);
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    LearningCurve curve;
    curve.trials_total = config.trials;
    for (const auto& t : trials) {
        if (t.diverged) ++curve.diverged_trials;
    }
    const int included = config.trials - curve.diverged_trials;
    if (included == 0) {
        throw AllTrialsDiverged("all " + std::to_string(config.trials) +
                                " trials diverged");
    }

    // complete (non-diverged) traces share the iteration grid
    for (const auto& t : trials) {
        if (t.diverged) continue;
        curve.iterations = t.iterations;
        break;
    }
    const std::size_t points = curve.iterations.size();
    curve.test_mse.assign(points, 0.0);
    curve.network_size.assign(points, 0.0);
    curve.lambda_mean.assign(points, 0.0);
    for (const auto& t : trials) {
        if (t.diverged) continue;
        for (std::size_t i = 0; i < points; ++i) {
            curve.test_mse[i] += t.test_mse[i];
            curve.network_size[i] += static_cast<double>(t.network_size[i]);
            curve.lambda_mean[i] += t.lambda_trace[i];
        }
    }
    const double inv = 1.0 / static_cast<double>(included);
    for (std::size_t i = 0; i < points; ++i) {
        curve.test_mse[i] *= inv;
        curve.network_size[i] *= inv;
        curve.lambda_mean[i] *= inv;
    }
    curve.per_trial = std::move(trials);
    return curve;
}

}  // namespace kaf
