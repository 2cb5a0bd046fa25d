#include "kaf/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kaf {

void KernelParams::validate() const {
    if (!(bandwidth > 0.0)) {
        throw std::invalid_argument("kernel bandwidth must be > 0, got " +
                                    std::to_string(bandwidth));
    }
}

double eval_gaussian(std::span<const double> u, std::span<const double> v,
                     const KernelParams& params) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("eval_gaussian: dimension mismatch (" +
                                    std::to_string(u.size()) + " vs " +
                                    std::to_string(v.size()) + ")");
    }
    double sq = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - v[i];
        sq += d * d;
    }
    return std::exp(-params.bandwidth * sq);
}

std::size_t ExplicitFeatureMap::feature_dim() const {
    switch (kind) {
        case FeatureMapKind::linear_identity:
            return input_dim;
        case FeatureMapKind::polynomial_degree_2:
            // x_i^2 for each i plus sqrt(2) x_i x_j for i < j
            return input_dim * (input_dim + 1) / 2;
    }
    return 0;
}

void ExplicitFeatureMap::validate() const {
    if (input_dim == 0) {
        throw std::invalid_argument("feature map input_dim must be >= 1");
    }
}

std::vector<double> map_features(std::span<const double> u,
                                 const ExplicitFeatureMap& fmap) {
    if (u.size() != fmap.input_dim) {
        throw std::invalid_argument(
            "map_features: input has dimension " + std::to_string(u.size()) +
            ", map expects " + std::to_string(fmap.input_dim));
    }
    switch (fmap.kind) {
        case FeatureMapKind::linear_identity:
            return std::vector<double>(u.begin(), u.end());
        case FeatureMapKind::polynomial_degree_2: {
            const std::size_t n = u.size();
            std::vector<double> phi;
            phi.reserve(fmap.feature_dim());
            const double root2 = std::sqrt(2.0);
            for (std::size_t i = 0; i < n; ++i) {
                phi.push_back(u[i] * u[i]);
            }
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    phi.push_back(root2 * u[i] * u[j]);
                }
            }
            return phi;
        }
    }
    throw std::invalid_argument("map_features: unknown map kind");
}

double induced_kernel(std::span<const double> u, std::span<const double> v,
                      const ExplicitFeatureMap& fmap) {
    if (u.size() != fmap.input_dim || v.size() != fmap.input_dim) {
        throw std::invalid_argument("induced_kernel: dimension mismatch");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
    switch (fmap.kind) {
        case FeatureMapKind::linear_identity:
            return dot;
        case FeatureMapKind::polynomial_degree_2:
            return dot * dot;
    }
    throw std::invalid_argument("induced_kernel: unknown map kind");
}

}  // namespace kaf
