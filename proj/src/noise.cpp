#include "kaf/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kaf {

void BgParams::validate() const {
    if (!(impulse_prob >= 0.0 && impulse_prob <= 1.0)) {
        throw std::invalid_argument("noise impulse_prob must be within [0,1], got " +
                                    std::to_string(impulse_prob));
    }
    if (!(sigma_impulse >= 0.0)) {
        throw std::invalid_argument("noise sigma_impulse must be >= 0");
    }
    if (!(sigma_gauss >= 0.0)) {
        throw std::invalid_argument("noise sigma_gauss must be >= 0");
    }
}

void SasParams::validate() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        throw std::invalid_argument("noise alpha must be within (0,2], got " +
                                    std::to_string(alpha));
    }
    if (!(dispersion > 0.0)) {
        throw std::invalid_argument("noise dispersion must be > 0, got " +
                                    std::to_string(dispersion));
    }
}

BgDraw sample_bg_detail(const BgParams& params, RandomStream& stream) {
    // Every draw consumes the same number of variates regardless of the gate,
    // keeping streams aligned across parameterizations.
    const double g = params.sigma_gauss * stream.normal();
    const bool b = stream.bernoulli(params.impulse_prob);
    const double i = params.sigma_impulse * stream.normal();
    return {g + (b ? i : 0.0), b};
}

double sample_bg(const BgParams& params, RandomStream& stream) {
    return sample_bg_detail(params, stream).value;
}

double sample_sas(const SasParams& params, RandomStream& stream) {
    const double alpha = params.alpha;
    const double scale = std::pow(params.dispersion, 1.0 / alpha);
    for (int attempt = 0; attempt < 100; ++attempt) {
        const double u = (stream.uniform_open() - 0.5) * std::numbers::pi;
        const double w = stream.exponential();
        double x;
        if (alpha == 1.0) {
            x = std::tan(u);
        } else {
            x = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha) *
                std::pow(std::cos(u - alpha * u) / w, (1.0 - alpha) / alpha);
        }
        const double v = scale * x;
        if (std::isfinite(v)) {
            return v;
        }
        // measure-zero overflow of the transform; redraw deterministically
    }
    throw std::runtime_error("sample_sas: transform failed to produce a finite value");
}

double snr_to_dispersion(double snr_db, double input_variance) {
    if (!(input_variance > 0.0)) {
        throw std::invalid_argument("snr_to_dispersion: input_variance must be > 0");
    }
    return input_variance / std::pow(10.0, snr_db / 10.0);
}

}  // namespace kaf
