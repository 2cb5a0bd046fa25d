#pragma once

#include "kaf/random.hpp"

namespace kaf {

/// Bernoulli-Gaussian contamination: background WGN plus a Bernoulli-gated
/// Gaussian impulse, v = g + b*i with g ~ N(0, sigma_gauss^2), b ~ Ber(c),
/// i ~ N(0, sigma_impulse^2), all independent.
struct BgParams {
    double impulse_prob = 0.2;    // c
    double sigma_impulse = 0.02;  // root deviation of the impulse component
    double sigma_gauss = 0.02;    // root deviation of the background

    void validate() const;
};

/// Symmetric alpha-stable law with characteristic function exp(-m*|t|^alpha).
struct SasParams {
    double alpha = 1.4;        // characteristic exponent, in (0, 2]
    double dispersion = 1.0;   // m > 0

    void validate() const;
};

struct BgDraw {
    double value;
    bool impulse_active;  // the Bernoulli gate b
};

/// One BG draw, exposing the gate so activation statistics can be counted.
BgDraw sample_bg_detail(const BgParams& params, RandomStream& stream);

double sample_bg(const BgParams& params, RandomStream& stream);

/// One SaS draw via the Chambers-Mallows-Stuck transform of a uniform angle
/// and a unit exponential, scaled by m^(1/alpha).
double sample_sas(const SasParams& params, RandomStream& stream);

/// Dispersion from a signal-to-noise ratio read in decibels:
/// m = input_variance / 10^(snr_db/10).
double snr_to_dispersion(double snr_db, double input_variance);

}  // namespace kaf
