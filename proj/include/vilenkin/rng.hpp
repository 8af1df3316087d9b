#pragma once

// Deterministic splittable random streams.  Experiment grids hand every cell
// a stream derived by hashing the master seed with the cell's coordinates,
// so results are reproducible bit-for-bit regardless of evaluation order or
// thread count.  The generator is splitmix64; uniform doubles take the top
// 53 bits, keeping output identical across platforms and standard libraries.

#include <cstdint>
#include <initializer_list>

namespace vilenkin {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Derives an independent stream from a seed and coordinate tags.
    static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
        Rng r(seed);
        for (std::uint64_t t : tags) {
            r.state_ ^= mix(t + 0x9e3779b97f4a7c15ULL);
            r.next_u64();
        }
        return r;
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

}  // namespace vilenkin
