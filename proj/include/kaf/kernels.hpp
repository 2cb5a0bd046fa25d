#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kaf {

/// Gaussian kernel parameters, convention kappa(u, v) = exp(-h * ||u - v||^2).
struct KernelParams {
    double bandwidth = 0.1;  // h > 0

    void validate() const;
};

/// kappa(u, v) = exp(-h * ||u - v||^2). Throws std::invalid_argument on
/// dimension mismatch. Result is in (0, 1].
double eval_gaussian(std::span<const double> u, std::span<const double> v,
                     const KernelParams& params);

/// Finite-dimensional feature maps whose inner products can be materialized
/// exactly. Used by the analysis module, where weight vectors must live in an
/// explicit feature space.
enum class FeatureMapKind {
    linear_identity,     // phi(u) = u,            k(u,v) = u.v
    polynomial_degree_2, // monomials of degree 2,  k(u,v) = (u.v)^2
};

struct ExplicitFeatureMap {
    FeatureMapKind kind = FeatureMapKind::linear_identity;
    std::size_t input_dim = 1;

    std::size_t feature_dim() const;
    void validate() const;
};

/// phi(u). Cross terms of the degree-2 map carry a sqrt(2) factor so that
/// phi(u).phi(v) == (u.v)^2 holds to machine precision.
std::vector<double> map_features(std::span<const double> u,
                                 const ExplicitFeatureMap& fmap);

/// The kernel induced by an explicit map, evaluated in input space.
double induced_kernel(std::span<const double> u, std::span<const double> v,
                      const ExplicitFeatureMap& fmap);

}  // namespace kaf
