#pragma once

#include <cstdint>
#include <random>

#include "bandit/types.hpp"

namespace bandit {

/// What a stream is consumed for; part of the stream label.
enum class StreamPurpose : std::uint32_t { allocation = 0, reward = 1 };

/// Seeded random stream with the distribution kit the simulator needs.
/// All draws are derived from raw mt19937_64 output, so a given seed
/// yields the same sequence on every run.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double next_unit();

    bool next_bernoulli(double p) { return next_unit() < p; }

    /// Uniform integer in [0, n).
    std::int64_t next_below(std::int64_t n);

    /// Standard normal via Marsaglia's polar rejection.
    double next_normal();

    /// Gamma(shape, 1) for shape >= 1 via the Marsaglia-Tsang
    /// squeeze/rejection scheme.
    double next_gamma(double shape);

private:
    std::mt19937_64 engine_;
};

/// Derives the seed for one labeled stream from the master seed. Every
/// (replication, week, policy, purpose) combination gets an independent
/// stream, so one policy's draws never shift another's.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t replication,
                                 std::uint32_t week, Policy policy, StreamPurpose purpose);

inline RngStream make_stream(std::uint64_t master, std::uint64_t replication, std::uint32_t week,
                             Policy policy, StreamPurpose purpose) {
    return RngStream(derive_stream_seed(master, replication, week, policy, purpose));
}

}  // namespace bandit
