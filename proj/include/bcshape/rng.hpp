#ifndef BCSHAPE_RNG_HPP
#define BCSHAPE_RNG_HPP

#include <cmath>
#include <cstdint>

namespace bcshape {

/// Counter-based pseudo-random stream.
///
/// Output i is the SplitMix64 finalizer applied to seed + (i+1) * 2^64/phi.
/// Draws are indexed rather than sequential, so any slice of a sample range
/// can be generated independently and reproduces exactly across runs,
/// threads, and implementations.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t at(std::uint64_t counter) const {
        return mix64(seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
    }

    /// Uniform draw in (0, 1]; never returns 0, safe under log().
    double uniform(std::uint64_t counter) const {
        return static_cast<double>((at(counter) >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; consumes counters 2c and 2c+1.
    double gaussian(std::uint64_t counter) const {
        const double u1 = uniform(2 * counter);
        const double u2 = uniform(2 * counter + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    /// Independent substream, e.g. one per restart or per instance.
    CounterRng fork(std::uint64_t stream) const {
        return CounterRng(mix64(seed_ ^ mix64(stream + 0xD1B54A32D192ED03ULL)));
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

} // namespace bcshape

#endif
