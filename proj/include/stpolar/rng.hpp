#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace stpolar {

// splitmix64 mixing step. Used to derive engine seeds, not as a generator.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-derived substream seed: a pure function of (seed, tag, index).
// Independent trials draw from independent substreams so results do not
// depend on scheduling or worker count.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ tag);
    h = splitmix64(h ^ index);
    return h;
}

// Stream tags for the different randomness consumers.
namespace rngtag {
inline constexpr std::uint64_t kTrial = 0x545249414cULL;    // sweep trials
inline constexpr std::uint64_t kSpectrum = 0x5350454354ULL; // eigen-spectrum draws
inline constexpr std::uint64_t kCsiAlign = 0x435349414cULL; // csi alignment trials
} // namespace rngtag

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return uni_(eng_); }

    double gaussian() { return norm_(eng_); }

    // circularly symmetric complex Gaussian with E[|z|^2] = var
    std::complex<double> cgaussian(double var = 1.0) {
        const double s = std::sqrt(var * 0.5);
        return {s * gaussian(), s * gaussian()};
    }

    int bit() { return static_cast<int>(eng_() & 1u); }

    std::uint64_t u64() { return eng_(); }

private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> norm_{0.0, 1.0};
    std::uniform_real_distribution<double> uni_{0.0, 1.0};
};

} // namespace stpolar
