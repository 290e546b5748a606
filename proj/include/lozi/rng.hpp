#pragma once

#include <cstdint>
#include <random>

namespace lozi {

/// Seeded 64-bit Mersenne twister with a portable uniform draw (the standard
/// distributions are implementation-defined, which would break byte-identical reruns).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t next() { return engine_(); }

    /// Independent stream per (seed, index), e.g. one per time index n.
    static Rng stream(std::uint64_t seed, std::int64_t index) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(static_cast<std::uint64_t>(index) >> 32)};
        std::mt19937_64 e(seq);
        return Rng(e());
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace lozi
