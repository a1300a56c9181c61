#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace wanet {

// Counter-based generator (Philox4x32-10, Salmon et al. SC'11).
// Every consumer derives its own stream from (seed, stream id), so draws are
// independent of scheduling and worker count.
class Philox4x32 {
public:
    Philox4x32() = default;

    Philox4x32(std::uint64_t seed, std::uint64_t stream) {
        const std::uint64_t k = mix64(seed);
        key_[0] = static_cast<std::uint32_t>(k);
        key_[1] = static_cast<std::uint32_t>(k >> 32);
        ctr_[0] = 0;
        ctr_[1] = 0;
        ctr_[2] = static_cast<std::uint32_t>(stream);
        ctr_[3] = static_cast<std::uint32_t>(stream >> 32);
    }

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            block(ctr_, key_, buf_);
            advance();
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform on (0,1): (r+0.5) * 2^-53 with r in [0, 2^53).
    double next_unit() {
        const std::uint64_t r = next_u64() >> 11;
        return (static_cast<double>(r) + 0.5) * 0x1p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * next_unit(); }

    bool bernoulli(double p) { return next_unit() < p; }

    // Exp(1); strictly positive since next_unit() avoids both endpoints.
    double exponential() { return -std::log(next_unit()); }

    // Box-Muller, no caching so the draw count per call is fixed.
    double normal() {
        const double u1 = next_unit();
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Exact Poisson via sequential inversion from one uniform; additive split
    // keeps exp(-mean) in range for large means.
    std::uint64_t poisson(double mean) {
        if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be >= 0");
        if (mean == 0.0) return 0;
        if (mean > 500.0) {
            const double half = mean * 0.5;
            return poisson(half) + poisson(mean - half);
        }
        const double u = next_unit();
        double p = std::exp(-mean);
        double cum = p;
        std::uint64_t k = 0;
        const std::uint64_t cap = static_cast<std::uint64_t>(mean * 20.0 + 200.0);
        while (u > cum && k < cap) {
            ++k;
            p *= mean / static_cast<double>(k);
            cum += p;
        }
        return k;
    }

    // Raw block function, exposed for the known-answer tests.
    static void block(const std::uint32_t ctr[4], const std::uint32_t key[2], std::uint32_t out[4]) {
        std::uint32_t x0 = ctr[0], x1 = ctr[1], x2 = ctr[2], x3 = ctr[3];
        std::uint32_t k0 = key[0], k1 = key[1];
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                k0 += 0x9E3779B9u;
                k1 += 0xBB67AE85u;
            }
            const std::uint64_t p0 = static_cast<std::uint64_t>(0xD2511F53u) * x0;
            const std::uint64_t p1 = static_cast<std::uint64_t>(0xCD9E8D57u) * x2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t y0 = hi1 ^ x1 ^ k0;
            const std::uint32_t y1 = lo1;
            const std::uint32_t y2 = hi0 ^ x3 ^ k1;
            const std::uint32_t y3 = lo0;
            x0 = y0; x1 = y1; x2 = y2; x3 = y3;
        }
        out[0] = x0; out[1] = x1; out[2] = x2; out[3] = x3;
    }

    static std::uint64_t mix64(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    void advance() {
        if (++ctr_[0] == 0) ++ctr_[1];  // 2^64 blocks per stream
    }

    std::uint32_t ctr_[4] = {0, 0, 0, 0};
    std::uint32_t key_[2] = {0, 0};
    std::uint32_t buf_[4] = {0, 0, 0, 0};
    int pos_ = 4;
};

using RandomStream = Philox4x32;

// Hierarchical stream ids: experiment domain -> point -> realization -> part.
enum class StreamDomain : std::uint64_t {
    realization = 1,
    scheme_mc = 2,
    slot_fading = 3,
    qtable = 4,
    netsim = 5,
    tune = 6,
    oracle = 7,
};

inline std::uint64_t stream_id(StreamDomain domain, std::uint64_t a = 0, std::uint64_t b = 0,
                               std::uint64_t c = 0) {
    std::uint64_t h = Philox4x32::mix64(static_cast<std::uint64_t>(domain));
    h = Philox4x32::mix64(h ^ (a + 0x165667B19E3779F9ull));
    h = Philox4x32::mix64(h ^ (b + 0x27220A95FE075959ull));
    h = Philox4x32::mix64(h ^ (c + 0x8CB92BA72F3D8DD7ull));
    return h;
}

inline RandomStream make_stream(std::uint64_t seed, StreamDomain domain, std::uint64_t a = 0,
                                std::uint64_t b = 0, std::uint64_t c = 0) {
    return RandomStream(seed, stream_id(domain, a, b, c));
}

}  // namespace wanet
