#pragma once

#include <span>

namespace kaf {

/// Mixing-parameter state for the robust mixed-norm family. lambda blends the
/// l2 and l1 error norms and is clamped to [0,1] after every update. p is the
/// low-pass error-autocorrelation estimate used by rule 2 only.
struct MixingState {
    double lambda = 0.5;  // lambda(1) = 0.5
    double p = 0.0;

    // rule 1
    double gamma = 0.0;
    // rule 2
    double delta = 1.0;
    double theta = 0.0;
    double beta = 0.0;

    void validate() const;
};

/// Rule 1: lambda += gamma * (|e| - e^2), clamped to [0,1].
MixingState update_alg1(MixingState state, double e);

/// Rule 2: p = beta*p + (1-beta)*e*e_prev, then lambda = delta*lambda +
/// theta*p^2, clamped to [0,1]. p is updated first.
MixingState update_alg2(MixingState state, double e, double e_prev);

/// Sample mixed-norm cost: lambda*mean(e^2) + (1-lambda)*mean(|e|).
/// Throws std::invalid_argument on an empty sequence or lambda outside [0,1].
double mixed_norm_cost(std::span<const double> errors, double lambda);

}  // namespace kaf
