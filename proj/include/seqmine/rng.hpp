#pragma once

#include <cstdint>

namespace seqmine {

/// Deterministic splitmix64 stream. Self-contained so identical seeds give
/// identical output on every platform and standard library.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n), n >= 1. Multiply-shift reduction.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    /// Independent stream derived from this source's seed and a stream id;
    /// used to give each sampled row its own generator.
    RandomSource fork(std::uint64_t stream) const {
        RandomSource mixer(state_ ^ (0x9e3779b97f4a7c15ull * (stream + 1)));
        return RandomSource(mixer.next());
    }

private:
    std::uint64_t state_;
};

}  // namespace seqmine
