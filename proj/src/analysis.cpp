#include "kaf/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "kaf/filters.hpp"
#include "kaf/mixing.hpp"
#include "kaf/random.hpp"

namespace kaf {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

constexpr double kSqrt2OverPi = 0.7978845608028654;  // sqrt(2/pi)

}  // namespace

void ExplicitWeightState::validate() const {
    fmap.validate();
    if (omega.size() != fmap.feature_dim() || omega_opt.size() != fmap.feature_dim()) {
        throw std::invalid_argument(
            "ExplicitWeightState: weights must have the map's feature dimension " +
            std::to_string(fmap.feature_dim()));
    }
}

EcrRecord ecr_step(ExplicitWeightState& state, std::span<const double> u,
                   std::span<const double> u_q, double d, double lambda,
                   double mu) {
    state.validate();
    const auto phi = map_features(u, state.fmap);
    const auto phi_q = map_features(u_q, state.fmap);
    const double kappa = dot(phi_q, phi);
    if (std::abs(kappa) < 1e-12) {
        throw std::runtime_error("ecr_step: kappa(u_q, u) is numerically singular");
    }

    const std::size_t n = phi.size();
    std::vector<double> v_before(n);
    for (std::size_t i = 0; i < n; ++i) v_before[i] = state.omega[i] - state.omega_opt[i];

    EcrRecord rec;
    rec.e_a = dot(v_before, phi);
    rec.v_norm_before = dot(v_before, v_before);

    const double e = d - dot(state.omega, phi);
    const double gain = krmn_gain(e, lambda, mu);
    const double v_dot_phiq = dot(v_before, phi_q);
    for (std::size_t i = 0; i < n; ++i) state.omega[i] += gain * phi_q[i];

    std::vector<double> v_after(n);
    for (std::size_t i = 0; i < n; ++i) v_after[i] = state.omega[i] - state.omega_opt[i];
    rec.e_p = dot(v_after, phi);
    rec.v_norm_after = dot(v_after, v_after);

    const double k2 = kappa * kappa;
    rec.beta_q = 2.0 * (rec.e_p - rec.e_a) * (v_dot_phiq * kappa - rec.e_a) / k2;
    // differences first: a no-op update must cancel exactly
    rec.residual = std::abs((rec.v_norm_after - rec.v_norm_before) +
                            (rec.e_a * rec.e_a - rec.e_p * rec.e_p) / k2 -
                            rec.beta_q);
    return rec;
}

std::vector<EcrRecord> run_ecr_check(const EcrRunConfig& config) {
    if (config.steps < 1) {
        throw std::invalid_argument("ecr check: steps must be >= 1");
    }
    const ExplicitFeatureMap fmap{config.map_kind, config.input_dim};
    fmap.validate();
    RandomStream rng(config.seed, 0);

    const auto unit_vector = [&](std::size_t dim) {
        std::vector<double> v(dim);
        double norm = 0.0;
        do {
            norm = 0.0;
            for (double& x : v) {
                x = rng.normal();
                norm += x * x;
            }
        } while (norm == 0.0);
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
        return v;
    };

    ExplicitWeightState state;
    state.fmap = fmap;
    state.omega.assign(fmap.feature_dim(), 0.0);
    state.omega_opt.resize(fmap.feature_dim());
    for (double& x : state.omega_opt) x = rng.normal();

    MixingState mixing;
    mixing.delta = 0.98;
    mixing.theta = 0.01;
    mixing.beta = 0.9;
    double prev_error = 0.0;

    std::vector<EcrRecord> records;
    records.reserve(static_cast<std::size_t>(config.steps));
    for (long n = 0; n < config.steps; ++n) {
        const auto u = unit_vector(config.input_dim);
        // u_q: small perturbation of u, renormalized so ||phi(u_q)|| = 1
        std::vector<double> uq(u);
        double norm = 0.0;
        for (std::size_t i = 0; i < uq.size(); ++i) {
            uq[i] += 0.05 * rng.normal();
            norm += uq[i] * uq[i];
        }
        norm = std::sqrt(norm);
        for (double& x : uq) x /= norm;

        const double d = rng.normal();
        const auto phi = map_features(u, state.fmap);
        const double e = d - dot(state.omega, phi);
        records.push_back(ecr_step(state, u, uq, d, mixing.lambda, config.mu));
        mixing = update_alg2(mixing, e, prev_error);
        prev_error = e;
    }
    return records;
}

namespace {

double bound_against(double lambda, double sigma_e, double spectrum_term,
                     const char* term_name) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("stepsize bound: lambda must be within [0,1]");
    }
    if (!(sigma_e > 0.0)) {
        throw std::invalid_argument("stepsize bound: sigma_e must be > 0");
    }
    if (!(spectrum_term > 0.0)) {
        throw std::invalid_argument(std::string("stepsize bound: ") + term_name +
                                    " must be > 0");
    }
    const double coeff = 2.0 * lambda + (1.0 - lambda) * kSqrt2OverPi / sigma_e;
    return 2.0 / (coeff * spectrum_term);
}

}  // namespace

double stepsize_bound_trace(double lambda, double sigma_e, double trace_r) {
    return bound_against(lambda, sigma_e, trace_r, "trace_r");
}

double stepsize_bound_eigmax(double lambda, double sigma_e, double lambda_max) {
    return bound_against(lambda, sigma_e, lambda_max, "lambda_max");
}

WienerSolution wiener_solution(std::span<const double> features,
                               std::size_t n_samples, std::size_t dim,
                               std::span<const double> targets) {
    if (n_samples == 0 || dim == 0) {
        throw std::invalid_argument("wiener_solution: empty problem");
    }
    if (features.size() != n_samples * dim || targets.size() != n_samples) {
        throw std::invalid_argument("wiener_solution: shape mismatch");
    }

    // sample moments R = Phi'Phi/N, r = Phi'd/N
    std::vector<double> r_mat(dim * dim, 0.0);
    std::vector<double> r_vec(dim, 0.0);
    double d2 = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        const double* row = features.data() + s * dim;
        for (std::size_t i = 0; i < dim; ++i) {
            r_vec[i] += row[i] * targets[s];
            for (std::size_t j = i; j < dim; ++j) {
                r_mat[i * dim + j] += row[i] * row[j];
            }
        }
        d2 += targets[s] * targets[s];
    }
    const double inv_n = 1.0 / static_cast<double>(n_samples);
    for (std::size_t i = 0; i < dim; ++i) {
        r_vec[i] *= inv_n;
        for (std::size_t j = i; j < dim; ++j) {
            r_mat[i * dim + j] *= inv_n;
            r_mat[j * dim + i] = r_mat[i * dim + j];
        }
    }
    d2 *= inv_n;

    // Gaussian elimination with partial pivoting on [R | r]
    std::vector<double> a(r_mat);
    std::vector<double> b(r_vec);
    std::vector<std::size_t> perm(dim);
    for (std::size_t i = 0; i < dim; ++i) perm[i] = i;

    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    const double tol = (scale > 0.0 ? scale : 1.0) * 1e-12;

    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < dim; ++row) {
            if (std::abs(a[row * dim + col]) > std::abs(a[piv * dim + col])) piv = row;
        }
        if (std::abs(a[piv * dim + col]) <= tol) {
            throw std::runtime_error(
                "wiener_solution: moment matrix is rank-deficient at dimension " +
                std::to_string(perm[col]));
        }
        if (piv != col) {
            for (std::size_t j = 0; j < dim; ++j) std::swap(a[piv * dim + j], a[col * dim + j]);
            std::swap(b[piv], b[col]);
            std::swap(perm[piv], perm[col]);
        }
        const double p = a[col * dim + col];
        for (std::size_t row = col + 1; row < dim; ++row) {
            const double f = a[row * dim + col] / p;
            if (f == 0.0) continue;
            for (std::size_t j = col; j < dim; ++j) a[row * dim + j] -= f * a[col * dim + j];
            b[row] -= f * b[col];
        }
    }

    WienerSolution sol;
    sol.weights.assign(dim, 0.0);
    for (std::size_t i = dim; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < dim; ++j) s -= a[i * dim + j] * sol.weights[j];
        sol.weights[i] = s / a[i * dim + i];
    }
    sol.zeta_min = d2 - dot(r_vec, sol.weights);
    return sol;
}

void MomentState::validate() const {
    if (dim == 0 || xi.size() != dim * dim || eigenvalues.size() != dim) {
        throw std::invalid_argument("MomentState: inconsistent dimensions");
    }
    if (!(sigma_e > 0.0)) {
        throw std::invalid_argument("MomentState: sigma_e must be > 0");
    }
    for (double l : eigenvalues) {
        if (!(l >= 0.0)) {
            throw std::invalid_argument("MomentState: eigenvalues must be >= 0");
        }
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            if (xi[i * dim + j] != xi[j * dim + i]) {
                throw std::invalid_argument("MomentState: xi must be symmetric");
            }
        }
    }
}

MomentState moment_recursion_step(const MomentState& state, double lambda,
                                  double mu) {
    state.validate();
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("moment_recursion_step: lambda must be within [0,1]");
    }
    MomentState next = state;
    const double sign_rate = mu * (1.0 - lambda) * kSqrt2OverPi / state.sigma_e;
    const double drive = 4.0 * mu * lambda * state.sigma_e * state.sigma_e;
    for (std::size_t i = 0; i < state.dim; ++i) {
        for (std::size_t j = 0; j < state.dim; ++j) {
            const double contraction =
                1.0 - sign_rate * (state.eigenvalues[i] + state.eigenvalues[j]);
            double v = contraction * state.xi[i * state.dim + j] + drive;
            if (i == j) v += mu * mu * state.eigenvalues[i];
            next.xi[i * state.dim + j] = v;
        }
    }
    return next;
}

}  // namespace kaf
