#ifndef ONEPOINT_SAMPLING_HPP
#define ONEPOINT_SAMPLING_HPP

#include <cstdint>
#include <random>

namespace onepoint {

/// Seeded generator with an unbiased bounded draw.  mt19937_64 output is
/// specified bit-for-bit by the standard and the rejection step below avoids
/// the implementation-defined distributions, so sampled runs replay exactly
/// on any platform.
class Sampler {
  public:
    explicit Sampler(uint64_t seed) : rng_(seed) {}

    uint64_t next() { return rng_(); }

    uint64_t below(uint64_t n) {
        const uint64_t limit = n ? (~uint64_t(0) - (~uint64_t(0) % n + 1) % n) : 0;
        uint64_t x;
        do {
            x = rng_();
        } while (x > limit);
        return x % n;
    }

  private:
    std::mt19937_64 rng_;
};

}  // namespace onepoint

#endif
