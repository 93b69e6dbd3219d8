#ifndef TONGUETRACE_RNG_HPP
#define TONGUETRACE_RNG_HPP

#include <cstdint>

namespace tonguetrace {

// SplitMix64. Every randomized fixture in the toolkit (synthetic curves,
// corruption, fold shuffles) derives from this generator, so the constants
// below are part of the external contract: a reimplementation in another
// language must reproduce the exact same sequences.
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// Doubles are drawn as (next() >> 11) * 2^-53, uniform in [0, 1).
// Bounded integers are drawn as next() % n (the bias is irrelevant here and
// the modulo is bit-stable across platforms, unlike std:: distributions).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    std::uint64_t next_below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

private:
    std::uint64_t state_;
};

} // namespace tonguetrace

#endif
