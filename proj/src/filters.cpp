#include "kaf/filters.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kaf/quantizer.hpp"

namespace kaf {

bool is_kernel_algorithm(Algorithm a) {
    return a != Algorithm::lin_lms && a != Algorithm::lin_rmn;
}

bool is_quantized_algorithm(Algorithm a) {
    return a == Algorithm::qklms || a == Algorithm::qvpkrmn;
}

bool is_variable_lambda_algorithm(Algorithm a) {
    return a == Algorithm::vpkrmn1 || a == Algorithm::vpkrmn2 ||
           a == Algorithm::qvpkrmn;
}

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::klms: return "klms";
        case Algorithm::klad: return "klad";
        case Algorithm::krmn: return "krmn";
        case Algorithm::vpkrmn1: return "vpkrmn1";
        case Algorithm::vpkrmn2: return "vpkrmn2";
        case Algorithm::qklms: return "qklms";
        case Algorithm::qvpkrmn: return "qvpkrmn";
        case Algorithm::lin_lms: return "lin_lms";
        case Algorithm::lin_rmn: return "lin_rmn";
    }
    return "?";
}

void FilterConfig::validate() const {
    if (!(step_size > 0.0)) {
        throw std::invalid_argument("filter step_size must be > 0, got " +
                                    std::to_string(step_size));
    }
    if (algorithm == Algorithm::krmn || algorithm == Algorithm::lin_rmn) {
        if (!(fixed_lambda >= 0.0 && fixed_lambda <= 1.0)) {
            throw std::invalid_argument("filter fixed_lambda must be within [0,1]");
        }
    }
    if (is_kernel_algorithm(algorithm)) {
        kernel.validate();
    }
    if (is_quantized_algorithm(algorithm)) {
        if (!(epsilon_u >= 0.0)) {
            throw std::invalid_argument("filter epsilon_u must be >= 0");
        }
    }
    if (is_variable_lambda_algorithm(algorithm)) {
        mixing.validate();
    }
    if (algorithm == Algorithm::qvpkrmn && mixing_rule != 1 && mixing_rule != 2) {
        throw std::invalid_argument("filter mixing rule must be 1 or 2, got " +
                                    std::to_string(mixing_rule));
    }
}

FilterState make_filter_state(const FilterConfig& config, std::size_t input_dim) {
    config.validate();
    if (input_dim == 0) {
        throw std::invalid_argument("make_filter_state: input_dim must be >= 1");
    }
    FilterState state;
    state.input_dim = input_dim;
    if (is_kernel_algorithm(config.algorithm)) {
        state.network = RbfNetwork{config.kernel};
    } else {
        state.weights.assign(input_dim, 0.0);
    }
    state.mixing = config.mixing;
    return state;
}

double krmn_gain(double e, double lambda, double mu) {
    const double s = (e > 0.0) ? 1.0 : (e < 0.0 ? -1.0 : 0.0);
    return mu * (2.0 * lambda * e + (1.0 - lambda) * s);
}

namespace {

int lambda_rule(const FilterConfig& config) {
    switch (config.algorithm) {
        case Algorithm::vpkrmn1: return 1;
        case Algorithm::vpkrmn2: return 2;
        case Algorithm::qvpkrmn: return config.mixing_rule;
        default: return 0;
    }
}

double current_lambda(const FilterState& state, const FilterConfig& config) {
    switch (config.algorithm) {
        case Algorithm::klms:
        case Algorithm::qklms:
        case Algorithm::lin_lms:
            return 1.0;
        case Algorithm::klad:
            return 0.0;
        case Algorithm::krmn:
        case Algorithm::lin_rmn:
            return config.fixed_lambda;
        default:
            return state.mixing.lambda;
    }
}

void check_sample(const FilterState& state, std::span<const double> u, double d) {
    if (u.size() != state.input_dim) {
        throw std::invalid_argument(
            "step: input has dimension " + std::to_string(u.size()) +
            ", filter expects " + std::to_string(state.input_dim));
    }
    if (!std::isfinite(d)) {
        throw std::invalid_argument("step: non-finite desired value");
    }
    for (double x : u) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("step: non-finite input entry");
        }
    }
}

void adapt_lambda(FilterState& state, const FilterConfig& config, double e) {
    switch (lambda_rule(config)) {
        case 1:
            state.mixing = update_alg1(state.mixing, e);
            break;
        case 2:
            state.mixing = update_alg2(state.mixing, e, state.previous_error);
            break;
        default:
            break;
    }
}

}  // namespace

StepResult step(FilterState& state, const FilterConfig& config,
                std::span<const double> u, double d) {
    if (!is_kernel_algorithm(config.algorithm)) {
        return step_linear(state, config, u, d);
    }
    check_sample(state, u, d);

    const double y = state.network.predict(u);
    const double e = d - y;
    const double lambda = current_lambda(state, config);
    const double gain = krmn_gain(e, lambda, config.step_size);

    StepResult result{y, e, lambda, true, 0};
    if (is_quantized_algorithm(config.algorithm)) {
        const Codebook book{&state.network, config.epsilon_u};
        const auto decision = decide(book, u);
        if (decision.kind == QuantizeDecision::Kind::merge) {
            state.network.merge_coefficient(decision.merge_index, gain);
            result.appended = false;
            result.merge_index = decision.merge_index;
        } else {
            state.network.append_center(u, gain);
        }
    } else {
        state.network.append_center(u, gain);
    }

    adapt_lambda(state, config, e);
    state.previous_error = e;
    ++state.iteration;
    return result;
}

StepResult step_linear(FilterState& state, const FilterConfig& config,
                       std::span<const double> u, double d) {
    check_sample(state, u, d);

    double y = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) y += state.weights[k] * u[k];
    const double e = d - y;
    const double lambda = current_lambda(state, config);
    const double gain = krmn_gain(e, lambda, config.step_size);
    for (std::size_t k = 0; k < u.size(); ++k) state.weights[k] += gain * u[k];

    adapt_lambda(state, config, e);
    state.previous_error = e;
    ++state.iteration;
    return {y, e, lambda, false, 0};
}

}  // namespace kaf
