#ifndef MCNET_RNG_HPP
#define MCNET_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace mcnet {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace detail

// A seedable random stream. Streams for parallel replications are derived
// from (master_seed, index, attempt) so that every replication is
// reproducible independently of worker scheduling. All variate
// transformations are implemented here rather than with std distributions,
// which keeps byte-level output identical across standard libraries.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    static RngStream for_replication(std::uint64_t master_seed, std::uint64_t index,
                                     std::uint64_t attempt = 0) {
        std::uint64_t s = master_seed;
        std::uint64_t a = detail::splitmix64(s);
        s ^= index * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL;
        std::uint64_t b = detail::splitmix64(s);
        s ^= (attempt + 1) * 0x9E3779B97F4A7C15ULL;
        std::uint64_t c = detail::splitmix64(s);
        return RngStream(a ^ (b + 0x165667B19E3779F9ULL) ^ (c << 1));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unit-mean exponential.
    double exponential() { return -std::log1p(-uniform()); }

    // Poisson by inversion, split into chunks so exp(-mean) never underflows.
    // The sum of independent Poisson chunks is itself Poisson.
    long poisson(double mean) {
        long total = 0;
        while (mean > 16.0) {
            total += poisson_small(16.0);
            mean -= 16.0;
        }
        if (mean > 0.0) total += poisson_small(mean);
        return total;
    }

    std::mt19937_64& engine() { return engine_; }

  private:
    long poisson_small(double mean) {
        const double limit = std::exp(-mean);
        long k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    std::mt19937_64 engine_;
};

} // namespace mcnet

#endif
