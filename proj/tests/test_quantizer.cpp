#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "kaf/quantizer.hpp"

using namespace kaf;

namespace {

RbfNetwork make_net(const std::vector<std::vector<double>>& centers) {
    RbfNetwork net{KernelParams{0.1}};
    for (const auto& c : centers) net.append_center(c, 0.0);
    return net;
}

}  // namespace

TEST_SUITE("quantizer") {

TEST_CASE("nearest over a two-center codebook") {
    const auto net = make_net({{0.0}, {10.0}});
    const Codebook book{&net, 1.0};
    const auto hit = nearest(book, std::vector<double>{1.0});
    REQUIRE(hit.has_value());
    CHECK(hit->index == 0);
    CHECK(hit->distance == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("query equal to a stored center") {
    const auto net = make_net({{1.0, 1.0}, {-2.0, 0.5}, {4.0, 4.0}});
    const Codebook book{&net, 0.0};
    const auto hit = nearest(book, std::vector<double>{-2.0, 0.5});
    REQUIRE(hit.has_value());
    CHECK(hit->index == 1);
    CHECK(hit->distance == 0.0);
}

TEST_CASE("equidistant tie goes to the lowest index") {
    const auto net = make_net({{0.0}, {2.0}});
    const Codebook book{&net, 5.0};
    const auto hit = nearest(book, std::vector<double>{1.0});
    REQUIRE(hit.has_value());
    CHECK(hit->index == 0);
}

TEST_CASE("empty codebook is signaled distinctly") {
    const RbfNetwork net{KernelParams{0.1}};
    const Codebook book{&net, 1.0};
    CHECK_FALSE(nearest(book, std::vector<double>{1.0}).has_value());
    const auto d = decide(book, std::vector<double>{1.0});
    CHECK(d.kind == QuantizeDecision::Kind::admit);
}

TEST_CASE("zero distance with positive threshold merges") {
    const auto net = make_net({{3.0}});
    const Codebook book{&net, 0.5};
    const auto d = decide(book, std::vector<double>{3.0});
    CHECK(d.kind == QuantizeDecision::Kind::merge);
    CHECK(d.merge_index == 0);
}

TEST_CASE("zero threshold admits every distinct sample") {
    const auto net = make_net({{0.0}, {1.0}});
    const Codebook book{&net, 0.0};
    const auto d = decide(book, std::vector<double>{0.5});
    CHECK(d.kind == QuantizeDecision::Kind::admit);
}

TEST_CASE("boundary distance counts as merge") {
    const auto net = make_net({{0.0}});
    const Codebook book{&net, 3.0};
    const auto d = decide(book, std::vector<double>{3.0});  // distance exactly 3
    CHECK(d.kind == QuantizeDecision::Kind::merge);
}

TEST_CASE("decide agrees with a brute-force distance scan") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    std::vector<std::vector<double>> centers;
    for (int i = 0; i < 25; ++i) {
        centers.push_back({dist(rng), dist(rng), dist(rng)});
    }
    const auto net = make_net(centers);
    for (double eps : {0.0, 0.5, 2.0}) {
        const Codebook book{&net, eps};
        for (int i = 0; i < 200; ++i) {
            const std::vector<double> u{dist(rng), dist(rng), dist(rng)};
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_j = 0;
            for (std::size_t j = 0; j < centers.size(); ++j) {
                double sq = 0.0;
                for (std::size_t k = 0; k < 3; ++k) {
                    sq += (u[k] - centers[j][k]) * (u[k] - centers[j][k]);
                }
                const double dd = std::sqrt(sq);
                if (dd < best) {
                    best = dd;
                    best_j = j;
                }
            }
            const auto hit = nearest(book, u);
            REQUIRE(hit.has_value());
            CHECK(hit->index == best_j);
            CHECK(hit->distance == doctest::Approx(best).epsilon(1e-12));
            const auto d = decide(book, u);
            if (best <= eps) {
                CHECK(d.kind == QuantizeDecision::Kind::merge);
                CHECK(d.merge_index == best_j);
            } else {
                CHECK(d.kind == QuantizeDecision::Kind::admit);
            }
        }
    }
}

TEST_CASE("nearest rejects dimension mismatch") {
    const auto net = make_net({{0.0, 0.0}});
    const Codebook book{&net, 1.0};
    CHECK_THROWS_AS(nearest(book, std::vector<double>{1.0}), std::invalid_argument);
}

}  // TEST_SUITE
