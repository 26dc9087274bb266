#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace perc {

// 64-bit finalizer used for stream ids and seed derivation (splitmix64 step).
// Bijective, so distinct inputs never collide.
inline uint64_t hash_mix(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline uint64_t hash_combine(uint64_t a, uint64_t b) {
    return hash_mix(a ^ (hash_mix(b) + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2)));
}

// Philox 4x32-10 counter-based generator.
// Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC 2011.
namespace philox {

inline constexpr uint32_t kMulA  = 0xD2511F53u;
inline constexpr uint32_t kMulB  = 0xCD9E8D57u;
inline constexpr uint32_t kWeylA = 0x9E3779B9u;
inline constexpr uint32_t kWeylB = 0xBB67AE85u;

inline std::array<uint32_t, 4> block(uint64_t key, std::array<uint32_t, 4> ctr) {
    uint32_t k0 = static_cast<uint32_t>(key);
    uint32_t k1 = static_cast<uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
        const uint64_t p0 = static_cast<uint64_t>(kMulA) * ctr[0];
        const uint64_t p1 = static_cast<uint64_t>(kMulB) * ctr[2];
        const std::array<uint32_t, 4> next = {
            static_cast<uint32_t>(p1 >> 32) ^ ctr[1] ^ k0,
            static_cast<uint32_t>(p1),
            static_cast<uint32_t>(p0 >> 32) ^ ctr[3] ^ k1,
            static_cast<uint32_t>(p0),
        };
        ctr = next;
        k0 += kWeylA;
        k1 += kWeylB;
    }
    return ctr;
}

} // namespace philox

// One logical random stream addressed by (seed, sample, stream).
//
// Every draw is a pure function of that address plus the position within
// the stream, so Monte Carlo estimates are bit-identical regardless of how
// samples are partitioned across workers, and an edge keyed by its geometric
// identity receives the same draws in boxes of different radii (common
// random numbers across truncations).
class RandomStream {
public:
    RandomStream(uint64_t seed, uint64_t sample, uint64_t stream)
        : key_(seed + 0xDA942042E4DD58B5ull * (sample >> 32)),
          sample_lo_(static_cast<uint32_t>(sample)),
          stream_(stream) {}

    uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    uint64_t next_u64() {
        const uint64_t lo = next_u32();
        const uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform on [0,1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on the open interval (0,1); never returns an endpoint.
    double next_open_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Poisson count by CDF inversion. Exact for the desk-scale rates used
    // here; the loop guard only matters for rates far beyond exp underflow.
    unsigned poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        const double u = next_unit();
        double pk = std::exp(-lambda);
        double cum = pk;
        unsigned k = 0;
        while (u >= cum && k < 1000000u) {
            ++k;
            pk *= lambda / k;
            cum += pk;
        }
        return k;
    }

private:
    void refill() {
        buf_ = philox::block(key_, {block_, sample_lo_,
                                    static_cast<uint32_t>(stream_),
                                    static_cast<uint32_t>(stream_ >> 32)});
        ++block_;
        pos_ = 0;
    }

    uint64_t key_;
    uint32_t sample_lo_;
    uint64_t stream_;
    uint32_t block_ = 0;
    std::array<uint32_t, 4> buf_{};
    int pos_ = 4;
};

} // namespace perc
