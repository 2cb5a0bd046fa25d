#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "kaf/noise.hpp"

using namespace kaf;

TEST_SUITE("noise") {

TEST_CASE("bg without impulses is the plain background") {
    const BgParams params{0.0, 5.0, 0.02};
    RandomStream rng(1, 0);
    const int n = 100000;
    double mean = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto draw = sample_bg_detail(params, rng);
        CHECK_FALSE(draw.impulse_active);
        mean += draw.value;
        sq += draw.value * draw.value;
    }
    mean /= n;
    const double var = sq / n - mean * mean;
    CHECK(var == doctest::Approx(0.02 * 0.02).epsilon(0.05));
}

TEST_CASE("bg with certain impulses adds the variances") {
    const BgParams params{1.0, 0.05, 0.02};
    RandomStream rng(2, 0);
    const int n = 100000;
    double mean = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = sample_bg(params, rng);
        mean += v;
        sq += v * v;
    }
    mean /= n;
    const double var = sq / n - mean * mean;
    CHECK(var == doctest::Approx(0.02 * 0.02 + 0.05 * 0.05).epsilon(0.05));
}

TEST_CASE("bg impulse activation fraction") {
    const BgParams params{0.2, 0.02, 0.02};
    RandomStream rng(3, 0);
    const int n = 100000;
    long active = 0;
    for (int i = 0; i < n; ++i) {
        if (sample_bg_detail(params, rng).impulse_active) ++active;
    }
    const double fraction = static_cast<double>(active) / n;
    CHECK(fraction > 0.19);
    CHECK(fraction < 0.21);
}

TEST_CASE("bg draws are symmetric around zero") {
    const BgParams params{0.2, 0.1, 0.02};
    RandomStream rng(4, 0);
    const int n = 100000;
    double mean = 0.0, sq = 0.0;
    std::vector<double> vals(n);
    for (double& v : vals) v = sample_bg(params, rng);
    for (double v : vals) mean += v;
    mean /= n;
    for (double v : vals) sq += (v - mean) * (v - mean);
    const double se = std::sqrt(sq / n / n);
    CHECK(std::abs(mean) < 3.0 * se);
}

TEST_CASE("sas at alpha two is gaussian with variance 2m") {
    const double m = 0.5;
    const SasParams params{2.0, m};
    RandomStream rng(5, 0);
    const int n = 1000000;
    double mean = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = sample_sas(params, rng);
        mean += v;
        sq += v * v;
    }
    mean /= n;
    const double var = sq / n - mean * mean;
    CHECK(var == doctest::Approx(2.0 * m).epsilon(0.03));
}

TEST_CASE("sas at alpha one is cauchy with scale m") {
    const double m = 0.3;
    const SasParams params{1.0, m};
    RandomStream rng(6, 0);
    const int n = 1000000;
    std::vector<double> vals(n);
    for (double& v : vals) v = sample_sas(params, rng);
    std::sort(vals.begin(), vals.end());
    const double median = vals[n / 2];
    const double q1 = vals[n / 4];
    const double q3 = vals[3 * n / 4];
    CHECK(std::abs(median) < 0.01);
    CHECK((q3 - q1) / 2.0 == doctest::Approx(m).epsilon(0.05));
}

TEST_CASE("sas empirical characteristic function matches exp(-m)") {
    const double m = 0.03162;
    const SasParams params{1.4, m};
    RandomStream rng(7, 0);
    const int n = 1000000;
    double ecf = 0.0;
    for (int i = 0; i < n; ++i) ecf += std::cos(sample_sas(params, rng));
    ecf /= n;
    CHECK(std::abs(ecf - std::exp(-m)) < 0.005);
}

TEST_CASE("sas sign is balanced for alpha above one") {
    const SasParams params{1.4, 0.1};
    RandomStream rng(8, 0);
    const int n = 200000;
    double signs = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = sample_sas(params, rng);
        signs += (v > 0.0) ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
    }
    // mean of sign has standard error 1/sqrt(n)
    CHECK(std::abs(signs / n) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("snr conversion") {
    CHECK(snr_to_dispersion(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(snr_to_dispersion(15.0, 1.0) == doctest::Approx(0.0316227766).epsilon(1e-9));
    CHECK(snr_to_dispersion(15.0, 2.0) == doctest::Approx(0.0632455532).epsilon(1e-9));
    CHECK_THROWS_AS(snr_to_dispersion(15.0, 0.0), std::invalid_argument);
}

TEST_CASE("equal stream ids reproduce, distinct ids decorrelate") {
    RandomStream a(99, 4), b(99, 4), c(99, 5);
    const int n = 20000;
    std::vector<double> xa(n), xb(n), xc(n);
    for (int i = 0; i < n; ++i) {
        xa[i] = a.normal();
        xb[i] = b.normal();
        xc[i] = c.normal();
    }
    CHECK(xa == xb);  // bitwise reproducibility

    double corr = 0.0;
    for (int i = 0; i < n; ++i) corr += xa[i] * xc[i];
    corr /= n;
    CHECK(std::abs(corr) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("parameter validation") {
    const BgParams bad_prob{-0.1, 1.0, 1.0};
    const BgParams bad_sigma{0.5, -1.0, 1.0};
    const SasParams alpha_low{0.0, 1.0};
    const SasParams alpha_high{2.1, 1.0};
    const SasParams no_dispersion{1.4, 0.0};
    const SasParams fine{2.0, 0.1};
    CHECK_THROWS_AS(bad_prob.validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad_sigma.validate(), std::invalid_argument);
    CHECK_THROWS_AS(alpha_low.validate(), std::invalid_argument);
    CHECK_THROWS_AS(alpha_high.validate(), std::invalid_argument);
    CHECK_THROWS_AS(no_dispersion.validate(), std::invalid_argument);
    CHECK_NOTHROW(fine.validate());
}

}  // TEST_SUITE
