#include "bandit/rng.hpp"

#include <cmath>

namespace bandit {

double RngStream::next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::int64_t RngStream::next_below(std::int64_t n) {
    if (n <= 0) {
        throw BanditError(Errc::out_of_range, "next_below needs n >= 1");
    }
    // Rejection over the largest multiple of n below 2^64 to avoid modulo bias.
    std::uint64_t un = static_cast<std::uint64_t>(n);
    std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % un;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return static_cast<std::int64_t>(x % un);
}

double RngStream::next_normal() {
    while (true) {
        double u = 2.0 * next_unit() - 1.0;
        double v = 2.0 * next_unit() - 1.0;
        double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

double RngStream::next_gamma(double shape) {
    if (!(shape >= 1.0)) {
        throw BanditError(Errc::out_of_range, "gamma shape must be >= 1");
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x = next_normal();
        double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        double v = t * t * t;
        double u = next_unit();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

namespace {

// SplitMix64 finalizer; avalanching mix for seed derivation.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t replication,
                                 std::uint32_t week, Policy policy, StreamPurpose purpose) {
    std::uint64_t label = (static_cast<std::uint64_t>(week) << 32) |
                          (static_cast<std::uint64_t>(index_of(policy)) << 8) |
                          static_cast<std::uint64_t>(purpose);
    std::uint64_t h = mix(master);
    h = mix(h ^ replication);
    h = mix(h ^ label);
    return h;
}

}  // namespace bandit
