#pragma once

#include <cstdint>

#include "crt/gaussian.hpp"

namespace crt {

/// Deterministic splitmix64 stream. Used instead of <random> engines and
/// distributions so that identical seeds give identical results on every
/// platform; suites derive one independent stream per trial.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) {}

    static Rng stream(uint64_t seed, uint64_t index) {
        Rng mix(seed);
        uint64_t a = mix.next();
        Rng mix2(index);
        uint64_t b = mix2.next();
        return Rng(a ^ (b * 0xbf58476d1ce4e5b9ull));
    }

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform-ish integer in [lo, hi]; modulo bias is irrelevant here.
    int range(int lo, int hi) {
        return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

    bool chance(int percent) { return range(0, 99) < percent; }

    /// Rational with numerator in [-max_num, max_num] and denominator in
    /// {1, ..., max_den}.
    Rational small_rational(int max_num, int max_den) {
        return rat(range(-max_num, max_num), range(1, max_den));
    }

    Gaussian small_gaussian(int max_num, int max_den) {
        return Gaussian(small_rational(max_num, max_den), small_rational(max_num, max_den));
    }

    Gaussian nonzero_gaussian(int max_num, int max_den) {
        while (true) {
            Gaussian g = small_gaussian(max_num, max_den);
            if (!g.is_zero()) return g;
        }
    }

private:
    uint64_t state_;
};

} // namespace crt
