#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "kaf/filters.hpp"
#include "kaf/random.hpp"

using namespace kaf;

namespace {

FilterConfig kernel_config(Algorithm alg, double mu) {
    FilterConfig cfg;
    cfg.algorithm = alg;
    cfg.step_size = mu;
    cfg.kernel = KernelParams{0.1};
    if (alg == Algorithm::krmn) cfg.fixed_lambda = 0.3;
    if (is_variable_lambda_algorithm(alg)) {
        cfg.mixing.gamma = 0.00005;
        cfg.mixing.delta = 0.98;
        cfg.mixing.theta = 0.01;
        cfg.mixing.beta = 0.9;
    }
    return cfg;
}

struct Trace {
    std::vector<double> y, e, lambda;
    std::vector<std::size_t> size;
};

Trace run(const FilterConfig& cfg, std::uint64_t seed, int steps, int dim = 3) {
    RandomStream rng(seed, 0);
    FilterState state = make_filter_state(cfg, static_cast<std::size_t>(dim));
    Trace t;
    for (int n = 0; n < steps; ++n) {
        std::vector<double> u(static_cast<std::size_t>(dim));
        for (double& x : u) x = rng.normal();
        const double d = rng.normal();
        const StepResult r = step(state, cfg, u, d);
        t.y.push_back(r.y);
        t.e.push_back(r.e);
        t.lambda.push_back(r.lambda);
        t.size.push_back(is_kernel_algorithm(cfg.algorithm) ? state.network.size()
                                                            : 0);
    }
    return t;
}

}  // namespace

TEST_SUITE("filters") {

TEST_CASE("gain specializations") {
    CHECK(krmn_gain(0.1, 1.0, 0.5) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(krmn_gain(-3.0, 0.0, 1.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(krmn_gain(0.5, 0.3, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(krmn_gain(0.0, 0.3, 1.0) == 0.0);  // sign(0) = 0
}

TEST_CASE("gain magnitude never exceeds its two-term bound") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> err(-1e6, 1e6);
    std::uniform_real_distribution<double> lam(0.0, 1.0);
    std::uniform_real_distribution<double> step(1e-4, 2.0);
    for (int i = 0; i < 2000; ++i) {
        const double e = err(rng);
        const double lambda = lam(rng);
        const double mu = step(rng);
        const double bound = mu * (2.0 * lambda * std::abs(e) + (1.0 - lambda));
        CHECK(std::abs(krmn_gain(e, lambda, mu)) <= bound);
    }
}

TEST_CASE("first sample appends one center with the generic gain") {
    for (const auto alg : {Algorithm::klms, Algorithm::klad, Algorithm::krmn,
                           Algorithm::vpkrmn1, Algorithm::vpkrmn2,
                           Algorithm::qklms, Algorithm::qvpkrmn}) {
        FilterConfig cfg = kernel_config(alg, 0.4);
        FilterState state = make_filter_state(cfg, 2);
        const std::vector<double> u{0.3, -0.8};
        const double d = 1.7;
        const StepResult r = step(state, cfg, u, d);
        CHECK(r.y == 0.0);
        CHECK(r.e == d);
        CHECK(state.network.size() == 1);
        CHECK(state.network.coefficients()[0] == krmn_gain(d, r.lambda, 0.4));
        if (is_variable_lambda_algorithm(alg)) {
            CHECK(r.lambda == 0.5);  // initial mixing parameter
        }
    }
}

TEST_CASE("prediction matches the network state before the update") {
    RandomStream rng(5, 0);
    FilterConfig cfg = kernel_config(Algorithm::vpkrmn2, 0.3);
    FilterState state = make_filter_state(cfg, 3);
    for (int n = 0; n < 50; ++n) {
        std::vector<double> u{rng.normal(), rng.normal(), rng.normal()};
        const double d = rng.normal();
        const double expected_y = state.network.predict(u);
        const StepResult r = step(state, cfg, u, d);
        CHECK(r.y == expected_y);
        CHECK(r.e == d - expected_y);
    }
}

TEST_CASE("krmn at lambda one matches klms with the same step size") {
    FilterConfig krmn = kernel_config(Algorithm::krmn, 0.25);
    krmn.fixed_lambda = 1.0;
    const FilterConfig klms = kernel_config(Algorithm::klms, 0.25);
    const Trace a = run(krmn, 77, 300);
    const Trace b = run(klms, 77, 300);
    CHECK(a.e == b.e);  // bitwise
    CHECK(a.y == b.y);
    CHECK(a.size == b.size);
}

TEST_CASE("krmn at lambda zero matches klad") {
    FilterConfig krmn = kernel_config(Algorithm::krmn, 0.25);
    krmn.fixed_lambda = 0.0;
    const FilterConfig klad = kernel_config(Algorithm::klad, 0.25);
    const Trace a = run(krmn, 78, 300);
    const Trace b = run(klad, 78, 300);
    CHECK(a.e == b.e);
    CHECK(a.y == b.y);
}

TEST_CASE("vpkrmn rule 1 with gamma zero matches krmn at the initial lambda") {
    FilterConfig vp = kernel_config(Algorithm::vpkrmn1, 0.25);
    vp.mixing.gamma = 0.0;
    FilterConfig krmn = kernel_config(Algorithm::krmn, 0.25);
    krmn.fixed_lambda = 0.5;
    const Trace a = run(vp, 79, 300);
    const Trace b = run(krmn, 79, 300);
    CHECK(a.e == b.e);
    CHECK(a.y == b.y);
}

TEST_CASE("quantized run with zero threshold matches the unquantized run") {
    const FilterConfig q = kernel_config(Algorithm::qvpkrmn, 0.25);
    const FilterConfig v = kernel_config(Algorithm::vpkrmn2, 0.25);
    const Trace a = run(q, 80, 200);
    const Trace b = run(v, 80, 200);
    for (std::size_t i = 0; i < a.e.size(); ++i) {
        CHECK(std::abs(a.e[i] - b.e[i]) < 1e-12);
        CHECK(std::abs(a.y[i] - b.y[i]) < 1e-12);
        CHECK(std::abs(a.lambda[i] - b.lambda[i]) < 1e-12);
        CHECK(a.size[i] == b.size[i]);
    }
}

TEST_CASE("unquantized network grows one center per sample") {
    const Trace t = run(kernel_config(Algorithm::krmn, 0.25), 81, 120);
    for (std::size_t i = 0; i < t.size.size(); ++i) {
        CHECK(t.size[i] == i + 1);
    }
}

TEST_CASE("quantized network merges when samples repeat") {
    FilterConfig cfg = kernel_config(Algorithm::qklms, 0.25);
    cfg.epsilon_u = 0.01;
    FilterState state = make_filter_state(cfg, 1);
    const std::vector<double> u{1.0};
    const StepResult first = step(state, cfg, u, 1.0);
    CHECK(first.appended);
    const StepResult second = step(state, cfg, u, 1.0);
    CHECK_FALSE(second.appended);
    CHECK(second.merge_index == 0);
    CHECK(state.network.size() == 1);
}

TEST_CASE("identical seeds give bitwise identical error sequences") {
    const FilterConfig cfg = kernel_config(Algorithm::qvpkrmn, 0.3);
    const Trace a = run(cfg, 1234, 250);
    const Trace b = run(cfg, 1234, 250);
    CHECK(a.e == b.e);
    CHECK(a.lambda == b.lambda);
}

TEST_CASE("non-finite samples are rejected") {
    FilterConfig cfg = kernel_config(Algorithm::klms, 0.25);
    FilterState state = make_filter_state(cfg, 2);
    const std::vector<double> ok{0.0, 0.0};
    const std::vector<double> bad{0.0, std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_AS(step(state, cfg, ok, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
    CHECK_THROWS_AS(step(state, cfg, bad, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(step(state, cfg, std::vector<double>{1.0}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("iteration counts processed samples") {
    FilterConfig cfg = kernel_config(Algorithm::klms, 0.25);
    FilterState state = make_filter_state(cfg, 1);
    for (int n = 0; n < 17; ++n) {
        step(state, cfg, std::vector<double>{static_cast<double>(n)}, 1.0);
    }
    CHECK(state.iteration == 17);
}

TEST_CASE("linear baseline from zero weights") {
    FilterConfig cfg;
    cfg.algorithm = Algorithm::lin_lms;
    cfg.step_size = 0.1;
    FilterState state = make_filter_state(cfg, 3);
    const std::vector<double> u{1.0, -2.0, 0.5};
    const double d = 0.7;
    const StepResult r = step(state, cfg, u, d);
    CHECK(r.y == 0.0);
    CHECK(r.e == d);
    // one lms step from zero: w = 2*mu*d*u
    for (std::size_t k = 0; k < u.size(); ++k) {
        CHECK(state.weights[k] == doctest::Approx(2.0 * 0.1 * d * u[k]).epsilon(1e-15));
    }
}

TEST_CASE("linear rmn at lambda zero is a sign update") {
    FilterConfig cfg;
    cfg.algorithm = Algorithm::lin_rmn;
    cfg.step_size = 0.2;
    cfg.fixed_lambda = 0.0;
    FilterState state = make_filter_state(cfg, 2);
    const std::vector<double> u{3.0, -1.0};
    step(state, cfg, u, -5.0);  // e = -5, sign = -1
    for (std::size_t k = 0; k < u.size(); ++k) {
        CHECK(state.weights[k] == doctest::Approx(-0.2 * u[k]).epsilon(1e-15));
    }
}

TEST_CASE("config validation catches bad parameters") {
    FilterConfig cfg = kernel_config(Algorithm::krmn, 0.25);
    cfg.step_size = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = kernel_config(Algorithm::krmn, 0.25);
    cfg.fixed_lambda = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = kernel_config(Algorithm::qvpkrmn, 0.25);
    cfg.mixing_rule = 3;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = kernel_config(Algorithm::qklms, 0.25);
    cfg.epsilon_u = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

}  // TEST_SUITE
