// random.hpp — seeded randomness and evaluation counting.
//
// All stochastic code in the library draws from a RandomSource that is
// threaded through explicitly; there is no global generator.  The raw
// engine is std::mt19937_64 (fully specified by the standard), and the
// integer/real draws below avoid std::*_distribution, whose output is
// implementation-defined.  Identical seeds therefore give bit-identical
// runs on any platform.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ecga {

// splitmix64 finalizer, also used to expand seeds and to derive child
// stream seeds from (master, tag...) tuples.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Deterministic seed splitting: child = H(master, a, b, c).  Used by the
// experiment harness so that parallel and serial execution assign the same
// seed to the same logical run.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0, std::uint64_t c = 0) {
    constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = master + golden;
    x = mix64(x ^ (a + golden));
    x = mix64(x ^ (b + 2 * golden));
    x = mix64(x ^ (c + 3 * golden));
    return x;
}

class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed) {
        // Expand the 64-bit seed into the full engine state.
        std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL;
        std::seed_seq seq{static_cast<unsigned>(mix64(s)),
                          static_cast<unsigned>(mix64(s) >> 32),
                          static_cast<unsigned>(mix64(s + 1)),
                          static_cast<unsigned>(mix64(s + 1) >> 32)};
        engine_.seed(seq);
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased uniform draw in [0, bound); bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform in [0, 1) with 53 random bits.
    double unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Independent child stream; deterministic function of (seed, a, b).
    RandomSource split(std::uint64_t a, std::uint64_t b = 0) const {
        return RandomSource(derive_seed(seed_, a, b));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

// Fisher-Yates; deterministic given the source state.
template <typename T>
void shuffle(std::vector<T>& v, RandomSource& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

// Counts fitness-function invocations.  Incremented exactly once per call;
// single-owner, never shared across threads.
class EvalCounter {
public:
    void increment() { ++count_; }
    void add(std::uint64_t k) { count_ += k; }
    std::uint64_t count() const { return count_; }

private:
    std::uint64_t count_ = 0;
};

}  // namespace ecga
