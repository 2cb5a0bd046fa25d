#include "kaf/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kaf {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

void MixingState::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("mixing lambda must be within [0,1], got " +
                                    std::to_string(lambda));
    }
    if (!(gamma >= 0.0)) {
        throw std::invalid_argument("mixing gamma must be >= 0");
    }
    if (!(delta >= 0.0 && delta <= 1.0)) {
        throw std::invalid_argument("mixing delta must be within [0,1]");
    }
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("mixing beta must be within [0,1]");
    }
    if (!(theta >= 0.0)) {
        throw std::invalid_argument("mixing theta must be >= 0");
    }
}

MixingState update_alg1(MixingState state, double e) {
    state.lambda = clamp01(state.lambda + state.gamma * (std::abs(e) - e * e));
    return state;
}

MixingState update_alg2(MixingState state, double e, double e_prev) {
    state.p = state.beta * state.p + (1.0 - state.beta) * e * e_prev;
    state.lambda = clamp01(state.delta * state.lambda + state.theta * state.p * state.p);
    return state;
}

double mixed_norm_cost(std::span<const double> errors, double lambda) {
    if (errors.empty()) {
        throw std::invalid_argument("mixed_norm_cost: empty error sequence");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("mixed_norm_cost: lambda must be within [0,1]");
    }
    double sq = 0.0, ab = 0.0;
    for (double e : errors) {
        sq += e * e;
        ab += std::abs(e);
    }
    const double n = static_cast<double>(errors.size());
    return lambda * (sq / n) + (1.0 - lambda) * (ab / n);
}

}  // namespace kaf
