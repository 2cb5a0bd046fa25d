#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kaf/kernels.hpp"
#include "kaf/mixing.hpp"
#include "kaf/rbf_network.hpp"

namespace kaf {

enum class Algorithm {
    klms,     // lambda fixed at 1; gain 2*mu*e (see note on step_size below)
    klad,     // lambda fixed at 0; gain mu*sign(e)
    krmn,     // fixed mixing parameter
    vpkrmn1,  // variable lambda, rule 1
    vpkrmn2,  // variable lambda, rule 2
    qklms,    // quantized, lambda fixed at 1
    qvpkrmn,  // quantized, variable lambda (rule chosen by mixing_rule)
    lin_lms,  // linear baseline, lambda fixed at 1
    lin_rmn,  // linear baseline, fixed mixing parameter
};

bool is_kernel_algorithm(Algorithm a);
bool is_quantized_algorithm(Algorithm a);
bool is_variable_lambda_algorithm(Algorithm a);
const char* algorithm_name(Algorithm a);

/// Static configuration of one filter run.
///
/// Note on step_size: every update is mu*(2*lambda*e + (1-lambda)*sign(e)),
/// including the lambda=1 specializations. KLMS/QKLMS/LinLMS therefore apply
/// gain 2*mu*e; halve mu to match texts that write the LMS gain as mu*e.
struct FilterConfig {
    Algorithm algorithm = Algorithm::klms;
    double step_size = 0.1;      // mu > 0
    double fixed_lambda = 0.0;   // krmn / lin_rmn only
    KernelParams kernel{};       // kernel algorithms only
    double epsilon_u = 0.0;      // quantized algorithms only
    MixingState mixing{};        // initial state, variable-lambda algorithms
    int mixing_rule = 2;         // qvpkrmn: 1 or 2

    void validate() const;
};

/// Mutable per-run state. Kernel algorithms grow `network`; linear baselines
/// adapt `weights`.
struct FilterState {
    RbfNetwork network;
    std::vector<double> weights;
    MixingState mixing;
    double previous_error = 0.0;
    long iteration = 0;
    std::size_t input_dim = 0;
};

FilterState make_filter_state(const FilterConfig& config, std::size_t input_dim);

struct StepResult {
    double y;       // prediction before the update
    double e;       // d - y
    double lambda;  // mixing parameter used in the gain
    bool appended = false;        // kernel runs: a new center was stored
    std::size_t merge_index = 0;  // kernel runs: target of a merge update
};

/// mu * (2*lambda*e + (1-lambda)*sign(e)), with sign(0) = 0.
double krmn_gain(double e, double lambda, double mu);

/// One online update. Rejects non-finite inputs and dimension mismatches with
/// std::invalid_argument.
StepResult step(FilterState& state, const FilterConfig& config,
                std::span<const double> u, double d);

/// Linear-baseline update (lin_lms / lin_rmn): y = w.u, w += gain*u.
StepResult step_linear(FilterState& state, const FilterConfig& config,
                       std::span<const double> u, double d);

}  // namespace kaf
