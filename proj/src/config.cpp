#include "kaf/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace kaf {

namespace {

using json = nlohmann::ordered_json;

void reject_unknown_keys(const json& j, const std::string& scope,
                         const std::set<std::string>& allowed) {
    for (const auto& item : j.items()) {
        if (!allowed.contains(item.key())) {
            throw ConfigError("unknown key '" + item.key() + "' in " + scope);
        }
    }
}

const json& require(const json& j, const std::string& scope, const char* key) {
    if (!j.contains(key)) {
        throw ConfigError("missing required key '" + std::string(key) + "' in " + scope);
    }
    return j.at(key);
}

double as_number(const json& j, const std::string& field) {
    if (!j.is_number()) {
        throw ConfigError("field '" + field + "' must be a number");
    }
    return j.get<double>();
}

long as_integer(const json& j, const std::string& field) {
    if (!j.is_number_integer()) {
        throw ConfigError("field '" + field + "' must be an integer");
    }
    return j.get<long>();
}

bool as_boolean(const json& j, const std::string& field) {
    if (!j.is_boolean()) {
        throw ConfigError("field '" + field + "' must be a boolean");
    }
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& field) {
    if (!j.is_string()) {
        throw ConfigError("field '" + field + "' must be a string");
    }
    return j.get<std::string>();
}

Algorithm parse_algorithm(const std::string& name) {
    static const std::pair<const char*, Algorithm> table[] = {
        {"klms", Algorithm::klms},       {"klad", Algorithm::klad},
        {"krmn", Algorithm::krmn},       {"vpkrmn1", Algorithm::vpkrmn1},
        {"vpkrmn2", Algorithm::vpkrmn2}, {"qklms", Algorithm::qklms},
        {"qvpkrmn", Algorithm::qvpkrmn}, {"lin_lms", Algorithm::lin_lms},
        {"lin_rmn", Algorithm::lin_rmn},
    };
    for (const auto& [key, value] : table) {
        if (name == key) return value;
    }
    throw ConfigError("field 'filter.algorithm' has unknown value '" + name + "'");
}

void forbid(const json& j, const std::string& scope, const char* key,
            const std::string& why) {
    if (j.contains(key)) {
        throw ConfigError("key '" + std::string(key) + "' in " + scope +
                          " is only valid for " + why);
    }
}

FilterConfig parse_filter(const json& j) {
    if (!j.is_object()) throw ConfigError("'filter' must be an object");
    reject_unknown_keys(j, "filter",
                        {"algorithm", "step_size", "fixed_lambda",
                         "kernel_bandwidth", "epsilon_u", "mixing"});
    FilterConfig f;
    f.algorithm = parse_algorithm(as_string(require(j, "filter", "algorithm"),
                                            "filter.algorithm"));
    f.step_size = as_number(require(j, "filter", "step_size"), "filter.step_size");

    if (f.algorithm == Algorithm::krmn || f.algorithm == Algorithm::lin_rmn) {
        f.fixed_lambda = as_number(require(j, "filter", "fixed_lambda"),
                                   "filter.fixed_lambda");
    } else {
        forbid(j, "filter", "fixed_lambda", "the krmn and lin_rmn algorithms");
    }

    if (is_kernel_algorithm(f.algorithm)) {
        f.kernel.bandwidth = as_number(require(j, "filter", "kernel_bandwidth"),
                                       "filter.kernel_bandwidth");
    } else {
        forbid(j, "filter", "kernel_bandwidth", "kernel algorithms");
    }

    if (is_quantized_algorithm(f.algorithm)) {
        f.epsilon_u = as_number(require(j, "filter", "epsilon_u"), "filter.epsilon_u");
    } else {
        forbid(j, "filter", "epsilon_u", "the quantized algorithms");
    }

    if (is_variable_lambda_algorithm(f.algorithm)) {
        const json& m = require(j, "filter", "mixing");
        if (!m.is_object()) throw ConfigError("'filter.mixing' must be an object");
        reject_unknown_keys(m, "filter.mixing",
                            {"rule", "gamma", "delta", "theta", "beta"});
        if (f.algorithm == Algorithm::qvpkrmn) {
            f.mixing_rule = static_cast<int>(
                as_integer(require(m, "filter.mixing", "rule"), "filter.mixing.rule"));
        } else {
            forbid(m, "filter.mixing", "rule", "the qvpkrmn algorithm");
            f.mixing_rule = f.algorithm == Algorithm::vpkrmn1 ? 1 : 2;
        }
        if (f.mixing_rule == 1) {
            f.mixing.gamma = as_number(require(m, "filter.mixing", "gamma"),
                                       "filter.mixing.gamma");
            forbid(m, "filter.mixing", "delta", "mixing rule 2");
            forbid(m, "filter.mixing", "theta", "mixing rule 2");
            forbid(m, "filter.mixing", "beta", "mixing rule 2");
        } else {
            f.mixing.delta = as_number(require(m, "filter.mixing", "delta"),
                                       "filter.mixing.delta");
            f.mixing.theta = as_number(require(m, "filter.mixing", "theta"),
                                       "filter.mixing.theta");
            f.mixing.beta = as_number(require(m, "filter.mixing", "beta"),
                                      "filter.mixing.beta");
            forbid(m, "filter.mixing", "gamma", "mixing rule 1");
        }
    } else {
        forbid(j, "filter", "mixing", "the variable-lambda algorithms");
    }
    return f;
}

PlantConfig parse_plant(const json& j) {
    if (!j.is_object()) throw ConfigError("'plant' must be an object");
    reject_unknown_keys(j, "plant", {"fir_taps", "input_variance"});
    PlantConfig p;
    if (j.contains("fir_taps")) {
        const json& taps = j.at("fir_taps");
        if (!taps.is_array() || taps.empty()) {
            throw ConfigError("field 'plant.fir_taps' must be a non-empty array");
        }
        p.fir_taps.clear();
        for (const auto& t : taps) p.fir_taps.push_back(as_number(t, "plant.fir_taps"));
    }
    if (j.contains("input_variance")) {
        p.input_variance = as_number(j.at("input_variance"), "plant.input_variance");
    }
    return p;
}

NoiseModel parse_noise(const json& j, const PlantConfig& plant) {
    if (!j.is_object()) throw ConfigError("'noise' must be an object");
    const std::string model = as_string(require(j, "noise", "model"), "noise.model");
    if (model == "bg") {
        reject_unknown_keys(j, "noise",
                            {"model", "impulse_prob", "sigma_impulse", "sigma_gauss"});
        BgParams bg;
        bg.impulse_prob = as_number(require(j, "noise", "impulse_prob"),
                                    "noise.impulse_prob");
        bg.sigma_impulse = as_number(require(j, "noise", "sigma_impulse"),
                                     "noise.sigma_impulse");
        bg.sigma_gauss = as_number(require(j, "noise", "sigma_gauss"),
                                   "noise.sigma_gauss");
        return bg;
    }
    if (model == "sas") {
        reject_unknown_keys(j, "noise", {"model", "alpha", "dispersion", "snr_db"});
        SasParams sas;
        sas.alpha = as_number(require(j, "noise", "alpha"), "noise.alpha");
        const bool has_m = j.contains("dispersion");
        const bool has_snr = j.contains("snr_db");
        if (has_m == has_snr) {
            throw ConfigError(
                "noise with model 'sas' needs exactly one of 'dispersion' or 'snr_db'");
        }
        if (has_m) {
            sas.dispersion = as_number(j.at("dispersion"), "noise.dispersion");
        } else {
            sas.dispersion = snr_to_dispersion(
                as_number(j.at("snr_db"), "noise.snr_db"), plant.input_variance);
        }
        return sas;
    }
    throw ConfigError("field 'noise.model' must be 'bg' or 'sas', got '" + model + "'");
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be an object");
    reject_unknown_keys(j, "config root",
                        {"rng", "seed", "train_len", "test_len", "trials",
                         "embed_dim", "eval_every", "noisy_test", "filter",
                         "plant", "noise"});

    if (j.contains("rng")) {
        const std::string rng = as_string(j.at("rng"), "rng");
        if (rng != kRngSchemeName) {
            throw ConfigError("field 'rng' requests unsupported generator '" + rng +
                              "' (this build provides '" + kRngSchemeName + "')");
        }
    }

    ExperimentConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(as_integer(require(j, "config root", "seed"), "seed"));
    cfg.train_len = as_integer(require(j, "config root", "train_len"), "train_len");
    cfg.test_len = as_integer(require(j, "config root", "test_len"), "test_len");
    cfg.trials = static_cast<int>(as_integer(require(j, "config root", "trials"), "trials"));
    if (j.contains("embed_dim")) {
        cfg.embed_dim = static_cast<int>(as_integer(j.at("embed_dim"), "embed_dim"));
    }
    if (j.contains("eval_every")) {
        cfg.eval_every = static_cast<int>(as_integer(j.at("eval_every"), "eval_every"));
    }
    if (j.contains("noisy_test")) {
        cfg.noisy_test = as_boolean(j.at("noisy_test"), "noisy_test");
    }
    cfg.plant = j.contains("plant") ? parse_plant(j.at("plant")) : PlantConfig{};
    cfg.filter = parse_filter(require(j, "config root", "filter"));
    cfg.noise = parse_noise(require(j, "config root", "noise"), cfg.plant);

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_experiment_config(buf.str());
}

void apply_full_scale(ExperimentConfig& config) {
    config.train_len = 15000;
    config.test_len = 1000;
    config.trials = 50;
}

std::string serialize_experiment_config(const ExperimentConfig& config) {
    json j;
    j["rng"] = kRngSchemeName;
    j["seed"] = config.seed;
    j["train_len"] = config.train_len;
    j["test_len"] = config.test_len;
    j["trials"] = config.trials;
    j["embed_dim"] = config.embed_dim;
    j["eval_every"] = config.eval_every;
    j["noisy_test"] = config.noisy_test;

    json f;
    f["algorithm"] = algorithm_name(config.filter.algorithm);
    f["step_size"] = config.filter.step_size;
    if (config.filter.algorithm == Algorithm::krmn ||
        config.filter.algorithm == Algorithm::lin_rmn) {
        f["fixed_lambda"] = config.filter.fixed_lambda;
    }
    if (is_kernel_algorithm(config.filter.algorithm)) {
        f["kernel_bandwidth"] = config.filter.kernel.bandwidth;
    }
    if (is_quantized_algorithm(config.filter.algorithm)) {
        f["epsilon_u"] = config.filter.epsilon_u;
    }
    if (is_variable_lambda_algorithm(config.filter.algorithm)) {
        json m;
        if (config.filter.algorithm == Algorithm::qvpkrmn) {
            m["rule"] = config.filter.mixing_rule;
        }
        const int rule = config.filter.algorithm == Algorithm::vpkrmn1
                             ? 1
                             : (config.filter.algorithm == Algorithm::vpkrmn2
                                    ? 2
                                    : config.filter.mixing_rule);
        if (rule == 1) {
            m["gamma"] = config.filter.mixing.gamma;
        } else {
            m["delta"] = config.filter.mixing.delta;
            m["theta"] = config.filter.mixing.theta;
            m["beta"] = config.filter.mixing.beta;
        }
        f["mixing"] = m;
    }
    j["filter"] = f;

    json p;
    p["fir_taps"] = config.plant.fir_taps;
    p["input_variance"] = config.plant.input_variance;
    j["plant"] = p;

    json n;
    if (const auto* bg = std::get_if<BgParams>(&config.noise)) {
        n["model"] = "bg";
        n["impulse_prob"] = bg->impulse_prob;
        n["sigma_impulse"] = bg->sigma_impulse;
        n["sigma_gauss"] = bg->sigma_gauss;
    } else {
        const auto& sas = std::get<SasParams>(config.noise);
        n["model"] = "sas";
        n["alpha"] = sas.alpha;
        n["dispersion"] = sas.dispersion;
    }
    j["noise"] = n;
    return j.dump(2);
}

std::uint64_t config_fingerprint(const ExperimentConfig& config) {
    const std::string text = serialize_experiment_config(config);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

}  // namespace kaf
