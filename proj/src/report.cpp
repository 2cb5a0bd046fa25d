#include "kaf/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include <json.hpp>

namespace kaf {

namespace {

void append_double(std::string& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

}  // namespace

std::string learning_curve_csv(const LearningCurve& curve) {
    std::string out = "iteration,test_mse,network_size,lambda_mean\n";
    for (std::size_t i = 0; i < curve.iterations.size(); ++i) {
        out += std::to_string(curve.iterations[i]);
        out += ',';
        append_double(out, curve.test_mse[i]);
        out += ',';
        append_double(out, curve.network_size[i]);
        out += ',';
        append_double(out, curve.lambda_mean[i]);
        out += '\n';
    }
    return out;
}

std::string noise_samples_csv(const std::vector<double>& samples) {
    std::string out = "index,value\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        append_double(out, samples[i]);
        out += '\n';
    }
    return out;
}

std::string ecr_records_csv(const std::vector<EcrRecord>& records) {
    std::string out = "step,residual\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        append_double(out, records[i].residual);
        out += '\n';
    }
    return out;
}

std::string run_metadata_json(const RunMetadata& meta) {
    nlohmann::ordered_json j;
    char fp[32];
    std::snprintf(fp, sizeof(fp), "%016llx",
                  static_cast<unsigned long long>(meta.config_fingerprint));
    j["config_fingerprint"] = fp;
    j["rng"] = kRngSchemeName;
    j["seed"] = meta.seed;
    j["trials_total"] = meta.trials_total;
    j["diverged_trials"] = meta.diverged_trials;
    j["wall_clock_seconds"] = meta.wall_clock_seconds;
    j["full_scale"] = meta.full_scale;
    return j.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::error_code ec;
    fs::create_directories(dir, ec);

    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("output path is not writable: '" + tmp.string() + "'");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            fs::remove(tmp, ec);
            throw std::runtime_error("failed while writing '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error("failed to move result into place at '" +
                                 path.string() + "'");
    }
}

}  // namespace kaf
