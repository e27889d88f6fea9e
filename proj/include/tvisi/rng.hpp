// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tvisi Authors

#pragma once

#include <cstdint>
#include <limits>

namespace tvisi {

/// Stream identifiers that partition the random number space of one master seed.
enum class Stream : std::uint64_t {
    ChannelTaps = 1,
    Noise = 2,
    Codebook = 3,
    Message = 4,
    Verify = 5,
};

/// Counter-based generator: output i is a SplitMix64 finalizer applied to
/// key + (i + 1) * golden_gamma. The key is derived from (seed, stream, index),
/// so any trial's draws can be regenerated without replaying earlier trials.
/// Satisfies UniformRandomBitGenerator.
class StreamRng {
public:
    using result_type = std::uint64_t;

    StreamRng(std::uint64_t seed, Stream stream, std::uint64_t index) noexcept
        : key_(mix(mix(seed ^ 0x6a09e667f3bcc909ULL) ^ mix(static_cast<std::uint64_t>(stream) + 0x3c6ef372fe94f82bULL)
                   ^ mix(index + 0xa54ff53a5f1d36f1ULL)))
    {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        counter_ += 0x9e3779b97f4a7c15ULL;
        return mix(key_ + counter_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform double in [-1, 1].
    double uniform_pm1() noexcept { return 2.0 * uniform01() - 1.0; }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace tvisi
