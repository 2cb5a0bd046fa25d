#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kaf/analysis.hpp"
#include "kaf/bench.hpp"
#include "kaf/config.hpp"
#include "kaf/recipes.hpp"
#include "kaf/report.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";

// exit codes: 0 success, 1 config/validation error, 2 all trials diverged
constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDiverged = 2;

fs::path resolve_out_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("KAF_OUT_DIR"); env && *env) return env;
    return ".";
}

int cmd_run(const std::string& config_path, const std::string& out_dir_flag,
            bool full_scale) {
    kaf::ExperimentConfig cfg = kaf::load_experiment_config(config_path);
    if (full_scale) kaf::apply_full_scale(cfg);

    const auto t0 = std::chrono::steady_clock::now();
    const kaf::LearningCurve curve = kaf::run_experiment(cfg);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;

    const fs::path out_dir = resolve_out_dir(out_dir_flag);
    std::string stem = fs::path(config_path).stem().string();
    if (full_scale) stem += ".full";

    kaf::RunMetadata meta;
    meta.config_fingerprint = kaf::config_fingerprint(cfg);
    meta.seed = cfg.seed;
    meta.trials_total = curve.trials_total;
    meta.diverged_trials = curve.diverged_trials;
    meta.wall_clock_seconds = elapsed.count();
    meta.full_scale = full_scale;

    const fs::path csv_path = out_dir / (stem + ".csv");
    kaf::write_file_atomic(csv_path, kaf::learning_curve_csv(curve));
    kaf::write_file_atomic(out_dir / (stem + ".meta.json"),
                           kaf::run_metadata_json(meta));

    std::cout << csv_path.string() << "\n";
    if (curve.diverged_trials > 0) {
        std::cerr << "warning: " << curve.diverged_trials << " of "
                  << curve.trials_total << " trials diverged and were excluded\n";
    }
    return kExitOk;
}

int cmd_noise(const std::string& model, long count, std::uint64_t seed,
              double impulse_prob, double sigma_impulse, double sigma_gauss,
              double alpha, double dispersion, double snr_db, double input_variance,
              const std::string& out_file) {
    kaf::RandomStream stream(seed, 0);
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(count));
    long impulses = 0;

    if (model == "bg") {
        kaf::BgParams params{impulse_prob, sigma_impulse, sigma_gauss};
        params.validate();
        for (long i = 0; i < count; ++i) {
            const auto draw = kaf::sample_bg_detail(params, stream);
            samples.push_back(draw.value);
            impulses += draw.impulse_active ? 1 : 0;
        }
    } else if (model == "sas") {
        double m = dispersion;
        if (!std::isnan(snr_db)) {
            if (!std::isnan(dispersion)) {
                throw kaf::ConfigError("give either --dispersion or --snr-db, not both");
            }
            m = kaf::snr_to_dispersion(snr_db, input_variance);
        } else if (std::isnan(dispersion)) {
            throw kaf::ConfigError("model 'sas' needs --dispersion or --snr-db");
        }
        kaf::SasParams params{alpha, m};
        params.validate();
        for (long i = 0; i < count; ++i) {
            samples.push_back(kaf::sample_sas(params, stream));
        }
    } else {
        throw kaf::ConfigError("--model must be 'bg' or 'sas', got '" + model + "'");
    }

    const std::string csv = kaf::noise_samples_csv(samples);
    if (out_file.empty()) {
        std::cout << csv;
    } else {
        kaf::write_file_atomic(out_file, csv);
    }

    double mean = 0.0, m2 = 0.0, lo = samples[0], hi = samples[0];
    for (double v : samples) {
        mean += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    mean /= static_cast<double>(count);
    for (double v : samples) m2 += (v - mean) * (v - mean);
    std::ostream& summary = out_file.empty() ? std::cerr : std::cout;
    summary << "stat,value\n";
    summary << "count," << count << "\n";
    summary << "mean," << mean << "\n";
    summary << "variance," << m2 / static_cast<double>(count) << "\n";
    summary << "min," << lo << "\n";
    summary << "max," << hi << "\n";
    if (model == "bg") {
        summary << "impulse_fraction,"
                << static_cast<double>(impulses) / static_cast<double>(count) << "\n";
    }
    return kExitOk;
}

int cmd_ecr_check(const std::string& map_name, std::size_t dim, long steps,
                  std::uint64_t seed, double mu, const std::string& out_file) {
    kaf::EcrRunConfig cfg;
    if (map_name == "linear") {
        cfg.map_kind = kaf::FeatureMapKind::linear_identity;
    } else if (map_name == "poly2") {
        cfg.map_kind = kaf::FeatureMapKind::polynomial_degree_2;
    } else {
        throw kaf::ConfigError("--map must be 'linear' or 'poly2', got '" + map_name + "'");
    }
    cfg.input_dim = dim;
    cfg.steps = steps;
    cfg.seed = seed;
    cfg.mu = mu;

    const auto records = kaf::run_ecr_check(cfg);
    const std::string csv = kaf::ecr_records_csv(records);
    if (out_file.empty()) {
        std::cout << csv;
    } else {
        kaf::write_file_atomic(out_file, csv);
    }
    double worst = 0.0;
    for (const auto& r : records) worst = std::max(worst, r.residual);
    std::cerr << "max residual " << worst << " over " << records.size() << " steps\n";
    return kExitOk;
}

int cmd_bound(double lambda, double sigma_e, double trace_r, double lambda_max) {
    const bool has_trace = !std::isnan(trace_r);
    const bool has_eig = !std::isnan(lambda_max);
    if (has_trace == has_eig) {
        throw kaf::ConfigError("give exactly one of --trace-r or --lambda-max");
    }
    const double bound = has_trace
                             ? kaf::stepsize_bound_trace(lambda, sigma_e, trace_r)
                             : kaf::stepsize_bound_eigmax(lambda, sigma_e, lambda_max);
    std::printf("%g\n", bound);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kaf - online kernel adaptive filtering toolkit"};
    app.require_subcommand(1);

    // run
    std::string run_config, run_out_dir;
    bool run_full_scale = false;
    auto* run = app.add_subcommand("run", "run an experiment config and write its CSV");
    run->add_option("config", run_config, "experiment config (JSON)")->required();
    run->add_option("--out-dir", run_out_dir,
                    "output directory (default: $KAF_OUT_DIR or '.')");
    run->add_flag("--full-scale", run_full_scale,
                  "rescale to 15000 train / 1000 test / 50 trials");

    // noise
    std::string noise_model, noise_out;
    long noise_count = 1000;
    std::uint64_t noise_seed = 0;
    double np_c = 0.2, np_si = 0.02, np_sg = 0.02;
    double np_alpha = 1.4;
    double np_m = std::nan(""), np_snr = std::nan(""), np_var = 1.0;
    auto* noise = app.add_subcommand("noise", "draw noise samples as CSV");
    noise->add_option("--model", noise_model, "'bg' or 'sas'")->required();
    noise->add_option("--count", noise_count, "number of samples");
    noise->add_option("--seed", noise_seed, "stream seed");
    noise->add_option("--impulse-prob", np_c, "bg: activation probability");
    noise->add_option("--sigma-impulse", np_si, "bg: impulse root deviation");
    noise->add_option("--sigma-gauss", np_sg, "bg: background root deviation");
    noise->add_option("--alpha", np_alpha, "sas: characteristic exponent");
    noise->add_option("--dispersion", np_m, "sas: dispersion m");
    noise->add_option("--snr-db", np_snr, "sas: SNR in dB (converted to dispersion)");
    noise->add_option("--input-variance", np_var, "sas: signal variance for --snr-db");
    noise->add_option("--out", noise_out, "output file (default: stdout)");

    // ecr-check
    std::string ecr_map = "poly2", ecr_out;
    std::size_t ecr_dim = 3;
    long ecr_steps = 500;
    std::uint64_t ecr_seed = 0;
    double ecr_mu = 0.2;
    auto* ecr = app.add_subcommand("ecr-check",
                                   "verify the per-step energy identity on an explicit map");
    ecr->add_option("--map", ecr_map, "'linear' or 'poly2'");
    ecr->add_option("--dim", ecr_dim, "input dimension");
    ecr->add_option("--steps", ecr_steps, "number of steps");
    ecr->add_option("--seed", ecr_seed, "stream seed");
    ecr->add_option("--mu", ecr_mu, "step size");
    ecr->add_option("--out", ecr_out, "output file (default: stdout)");

    // bound
    double b_lambda = 0.0, b_sigma = 1.0;
    double b_trace = std::nan(""), b_eig = std::nan("");
    auto* bound = app.add_subcommand("bound", "print the mean-convergence step-size bound");
    bound->add_option("--lambda", b_lambda, "mixing parameter")->required();
    bound->add_option("--sigma-e", b_sigma, "error standard deviation")->required();
    bound->add_option("--trace-r", b_trace, "trace of the feature autocorrelation");
    bound->add_option("--lambda-max", b_eig, "largest eigenvalue instead of the trace");

    auto* version = app.add_subcommand("version", "print version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (run->parsed()) return cmd_run(run_config, run_out_dir, run_full_scale);
        if (noise->parsed()) {
            return cmd_noise(noise_model, noise_count, noise_seed, np_c, np_si, np_sg,
                             np_alpha, np_m, np_snr, np_var, noise_out);
        }
        if (ecr->parsed()) {
            return cmd_ecr_check(ecr_map, ecr_dim, ecr_steps, ecr_seed, ecr_mu, ecr_out);
        }
        if (bound->parsed()) return cmd_bound(b_lambda, b_sigma, b_trace, b_eig);
        if (version->parsed()) {
            std::cout << "kaf " << kVersion << "\n";
            return kExitOk;
        }
    } catch (const kaf::AllTrialsDiverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDiverged;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
