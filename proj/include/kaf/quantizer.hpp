#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "kaf/rbf_network.hpp"

namespace kaf {

/// Read-only view of a network's center list together with the quantization
/// threshold. Distances are Euclidean in input space.
struct Codebook {
    const RbfNetwork* network = nullptr;
    double epsilon_u = 0.0;
};

struct NearestCenter {
    std::size_t index;
    double distance;
};

/// Nearest stored center by Euclidean distance, ties broken by lowest index.
/// Empty codebook yields nullopt (the caller then admits a new center).
std::optional<NearestCenter> nearest(const Codebook& book,
                                     std::span<const double> u);

struct QuantizeDecision {
    enum class Kind { admit, merge };
    Kind kind = Kind::admit;
    std::size_t merge_index = 0;  // valid when kind == merge
};

/// Merge into the nearest center when its distance is <= epsilon_u (boundary
/// counts as merge); otherwise admit the sample as a new center.
QuantizeDecision decide(const Codebook& book, std::span<const double> u);

}  // namespace kaf
