#include "kaf/quantizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kaf {

std::optional<NearestCenter> nearest(const Codebook& book,
                                     std::span<const double> u) {
    const RbfNetwork& net = *book.network;
    if (net.empty()) {
        return std::nullopt;
    }
    if (u.size() != net.dim()) {
        throw std::invalid_argument("nearest: dimension mismatch");
    }
    std::size_t best = 0;
    double best_sq = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < net.size(); ++j) {
        const auto c = net.center(j);
        double sq = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            const double d = u[k] - c[k];
            sq += d * d;
        }
        if (sq < best_sq) {  // strict: ties keep the lowest index
            best_sq = sq;
            best = j;
        }
    }
    return NearestCenter{best, std::sqrt(best_sq)};
}

QuantizeDecision decide(const Codebook& book, std::span<const double> u) {
    const auto hit = nearest(book, u);
    if (hit && hit->distance <= book.epsilon_u) {
        return {QuantizeDecision::Kind::merge, hit->index};
    }
    return {QuantizeDecision::Kind::admit, 0};
}

}  // namespace kaf
