#pragma once

#include <array>
#include <cstdint>

namespace ffint {

namespace detail {

// SplitMix64 finalizer, used for seeding and for deriving shard streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// xoshiro256** generator seeded through SplitMix64. The algorithm is fixed:
/// identical seeds yield identical streams on every platform. Parallel
/// consumers derive independent streams with shard_stream(seed, index).
class Rng {
   public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = detail::splitmix64(sm);
    }

    static Rng shard_stream(std::uint64_t seed, std::uint64_t shard) {
        std::uint64_t sm = shard;
        std::uint64_t mixed = detail::splitmix64(sm);
        return Rng(seed ^ mixed);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform draw from [0, n) by rejection; n must be nonzero.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n; // 2^64 mod n
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

   private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
};

} // namespace ffint
