#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kaf/kernels.hpp"

namespace kaf {

/// Weight state in an explicit (finite-dimensional) feature space, carried
/// alongside the reference weight it is measured against.
struct ExplicitWeightState {
    std::vector<double> omega;      // current weight
    std::vector<double> omega_opt;  // reference weight; arbitrary, may be zero
    ExplicitFeatureMap fmap;

    void validate() const;
};

/// One step of the energy bookkeeping. `residual` is the absolute defect of
///   ||V(n)||^2 + e_a^2/k^2 == ||V(n-1)||^2 + e_p^2/k^2 + beta_q
/// with k = kappa(u_q, u) and V the deviation from omega_opt.
struct EcrRecord {
    double e_a = 0.0;
    double e_p = 0.0;
    double v_norm_before = 0.0;  // squared feature-space norms
    double v_norm_after = 0.0;
    double beta_q = 0.0;
    double residual = 0.0;
};

/// Applies one mixed-norm update omega += gain * phi(u_q) and evaluates the
/// energy identity around it. The identity is exact only when ||phi(u_q)|| = 1
/// (always true for the Gaussian kernel); drivers that want vanishing
/// residuals must therefore feed unit-norm u_q. Throws std::runtime_error when
/// |kappa(u_q, u)| < 1e-12.
EcrRecord ecr_step(ExplicitWeightState& state, std::span<const double> u,
                   std::span<const double> u_q, double d, double lambda,
                   double mu);

/// Configuration of a self-contained ECR verification run: unit-norm random
/// inputs, u_q a renormalized perturbation of u, lambda driven by mixing
/// rule 2, random fixed omega_opt.
struct EcrRunConfig {
    FeatureMapKind map_kind = FeatureMapKind::polynomial_degree_2;
    std::size_t input_dim = 3;
    long steps = 500;
    std::uint64_t seed = 0;
    double mu = 0.2;
};

std::vector<EcrRecord> run_ecr_check(const EcrRunConfig& config);

/// Largest stable step size 2 / ((2*lambda + (1-lambda)*sqrt(2/pi)/sigma_e) * trace_r).
double stepsize_bound_trace(double lambda, double sigma_e, double trace_r);

/// Same coefficient against the largest eigenvalue instead of the trace.
double stepsize_bound_eigmax(double lambda, double sigma_e, double lambda_max);

struct WienerSolution {
    std::vector<double> weights;  // R^{-1} r from sample moments
    double zeta_min = 0.0;        // E{d^2} - r.weights
};

/// Sample-moment Wiener solve. `features` is row-major, n_samples x dim.
/// A rank-deficient moment matrix raises std::runtime_error naming the
/// deficient dimension.
WienerSolution wiener_solution(std::span<const double> features,
                               std::size_t n_samples, std::size_t dim,
                               std::span<const double> targets);

/// Second-moment recursion state: xi is dim x dim row-major and symmetric,
/// eigenvalues are those of the feature autocorrelation matrix.
struct MomentState {
    std::size_t dim = 0;
    std::vector<double> xi;
    std::vector<double> eigenvalues;
    double sigma_e = 1.0;

    void validate() const;
};

/// Elementwise update
///   xi_ij' = (1 - mu*(1-lambda)*sqrt(2/pi)/sigma_e*(l_i + l_j)) * xi_ij
///            + mu^2 * l_i * [i == j] + 4*mu*lambda*sigma_e^2.
MomentState moment_recursion_step(const MomentState& state, double lambda,
                                  double mu);

}  // namespace kaf
