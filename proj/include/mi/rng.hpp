#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mi {

// splitmix64 finalizer. Integer-only, so derived seeds are identical on
// every platform.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stream purposes. Keeping these distinct means e.g. the sphere sampler of
// ball i can never collide with the replicate sampler of replicate i.
namespace purpose {
inline constexpr std::uint64_t sample = 0x53414d50ull;     // "SAMP"
inline constexpr std::uint64_t classify = 0x434c4153ull;   // "CLAS"
inline constexpr std::uint64_t experiment = 0x45585052ull; // "EXPR"
inline constexpr std::uint64_t property = 0x50524f50ull;   // "PROP"
}

// Master seed plus a splittable derivation: (cell id, replicate id, purpose
// tag) -> child seed. Children are independent of evaluation order, which is
// what makes parallel replicate scheduling harmless.
struct Seed {
    std::uint64_t master = 0;

    Seed() = default;
    explicit Seed(std::uint64_t m) : master(m) {}

    [[nodiscard]] std::uint64_t child(std::uint64_t cell_id,
                                      std::uint64_t replicate_id,
                                      std::uint64_t purpose_tag) const {
        std::uint64_t h = mix64(master ^ 0x6d69u); // "mi"
        h = mix64(h ^ mix64(cell_id));
        h = mix64(h ^ mix64(replicate_id));
        h = mix64(h ^ mix64(purpose_tag));
        return h;
    }

    [[nodiscard]] Seed child_seed(std::uint64_t cell_id,
                                  std::uint64_t replicate_id,
                                  std::uint64_t purpose_tag) const {
        return Seed(child(cell_id, replicate_id, purpose_tag));
    }
};

// mt19937_64 has a standard-mandated output sequence; combined with the
// explicit bit-to-double mappings below, all sampling is reproducible
// across platforms and thread counts.
using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) {
    std::uint64_t s = seed;
    const std::uint32_t w[6] = {
        static_cast<std::uint32_t>(mix64(s ^ 1)), static_cast<std::uint32_t>(mix64(s ^ 1) >> 32),
        static_cast<std::uint32_t>(mix64(s ^ 2)), static_cast<std::uint32_t>(mix64(s ^ 2) >> 32),
        static_cast<std::uint32_t>(mix64(s ^ 3)), static_cast<std::uint32_t>(mix64(s ^ 3) >> 32)};
    std::seed_seq seq(w, w + 6);
    return Engine(seq);
}

// Uniform double in [0,1) using the top 53 bits. std::uniform_real_distribution
// is implementation-defined, so we avoid it.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& eng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(eng);
}

// Unbiased integer in [0, n).
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t x = eng();
        if (x >= threshold) return x % n;
    }
}

// Box–Muller without a cached spare; two uniforms per draw keeps the stream
// layout independent of caller history.
inline double normal01(Engine& eng) {
    double u1 = uniform01(eng);
    while (u1 <= 0.0) u1 = uniform01(eng);
    const double u2 = uniform01(eng);
    const double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

} // namespace mi
