#ifndef BO_RNG_HPP
#define BO_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace bo {

/// Counter-based generator: output i of stream `seed` is a pure function of
/// (seed, i), so fixtures are reproducible byte-for-byte across runs and
/// independent of draw order between streams.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + 0x9E3779B97F4A7C15ULL * ++ctr_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    double normal() {
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    std::complex<double> cnormal() { return {normal(), normal()}; }

  private:
    std::uint64_t seed_;
    std::uint64_t ctr_ = 0;
};

}  // namespace bo

#endif
