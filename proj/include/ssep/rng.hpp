#pragma once

#include <cmath>
#include <cstdint>

namespace ssep {

// All randomness in the artifact flows through this generator so that runs
// are reproducible bit-for-bit from a SeedSpec. std::mt19937_64 would work,
// but the standard distributions are implementation-defined, which breaks
// cross-platform byte-equality of reports; we keep the whole sampling path
// in our own hands.

inline std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) { seed_from(seed); }

    // Independent substream keyed by (master, stream). Streams with distinct
    // keys pass through splitmix64, whose outputs are well mixed, so the
    // resulting xoshiro states are unrelated.
    Xoshiro256pp(std::uint64_t master, std::uint64_t stream) {
        std::uint64_t s = master;
        std::uint64_t key = splitmix64_next(s) ^ (stream * 0xD1B54A32D192ED03ull);
        seed_from(key);
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0,1), 53-bit resolution.
    double u01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1]; safe as a log argument.
    double u01_pos() noexcept {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    // Exp(1) waiting time.
    double exponential() noexcept { return -std::log(u01_pos()); }

    // Uniform integer in [0, bound). bound must be positive and far below
    // 2^52; the modulo bias at these sizes is below 2^-40.
    std::uint64_t below(std::uint64_t bound) noexcept { return next() % bound; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }
    void seed_from(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : s_) w = splitmix64_next(s);
    }
    std::uint64_t s_[4];
};

// Stream derivation rule: replica r of a run with master seed m draws from
// Xoshiro256pp(m, r). Identical SeedSpec => bit-identical event sequence.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t replica_index = 0;

    Xoshiro256pp make_rng() const { return Xoshiro256pp(master_seed, replica_index); }
};

}  // namespace ssep
