#include "kaf/random.hpp"

#include <cmath>
#include <numbers>

namespace kaf {

namespace {

// splitmix64; mixes (seed, stream_id) into well-separated engine seeds.
std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    std::uint64_t x = seed;
    std::uint64_t a = splitmix64(x);
    x ^= stream_id * 0xda942042e4dd58b5ull + 0x2545f4914f6cdd1dull;
    std::uint64_t b = splitmix64(x);
    engine_.seed(a ^ (b << 1));
}

double RandomStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(a);
    has_cached_normal_ = true;
    return r * std::cos(a);
}

double RandomStream::exponential() { return -std::log(uniform_open()); }

bool RandomStream::bernoulli(double p) { return uniform() < p; }

}  // namespace kaf
