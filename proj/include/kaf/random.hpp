#pragma once

#include <cstdint>
#include <random>

namespace kaf {

/// Name of the pinned generator scheme. Config files carry this string so a
/// result can only be reproduced by the generator that produced it.
inline constexpr const char* kRngSchemeName = "kaf-mt19937_64-v1";

/// Deterministic random stream: mt19937_64 with splitmix64-derived seeding
/// plus explicit uniform / Box-Muller / exponential transforms. The standard
/// library distributions are deliberately avoided; their output is not
/// specified, this stream is bit-identical across platforms.
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform();
    /// Uniform on (0, 1) (never returns 0; safe under log()).
    double uniform_open();
    /// Standard normal via Box-Muller; draws are produced in pairs and cached.
    double normal();
    /// Exponential with unit mean.
    double exponential();
    /// Bernoulli with success probability p.
    bool bernoulli(double p);

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace kaf
