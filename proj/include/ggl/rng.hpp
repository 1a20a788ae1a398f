#ifndef GGL_RNG_HPP
#define GGL_RNG_HPP

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so sample i of suite s is identical no matter
// how work is scheduled across threads or runs.

#include <complex>
#include <cstdint>

namespace ggl {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class CounterRng {
public:
    CounterRng() = default;
    CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    // Independent substream; forking with the same tag always yields the
    // same stream regardless of draws made on the parent.
    CounterRng fork(std::uint64_t tag) const {
        return CounterRng(seed_, splitmix64(stream_ ^ (tag * 0xD1B54A32D192ED03ULL)));
    }

    std::uint64_t next_u64() {
        return splitmix64(seed_ ^ splitmix64(stream_ + 0x9E3779B97F4A7C15ULL * ++ctr_));
    }

    double uniform() {  // [0, 1)
        return double(next_u64() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + std::int64_t(next_u64() % std::uint64_t(hi - lo + 1));
    }

    std::complex<double> box(double re_lo, double re_hi, double im_lo, double im_hi) {
        double re = uniform(re_lo, re_hi);
        double im = uniform(im_lo, im_hi);
        return {re, im};
    }

private:
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
    std::uint64_t ctr_ = 0;
};

} // namespace ggl

#endif
