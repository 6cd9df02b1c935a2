#ifndef QPROD_RNG_HPP
#define QPROD_RNG_HPP

#include <cstdint>

namespace qprod {

// splitmix64: tiny, seedable, platform-independent generator.  Used for test
// and validation sampling where byte-identical runs across machines matter
// (std::mt19937 distributions are not cross-platform deterministic).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
  }

 private:
  std::uint64_t state_;
};

}  // namespace qprod

#endif
