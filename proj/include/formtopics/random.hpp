#ifndef FORMTOPICS_RANDOM_HPP
#define FORMTOPICS_RANDOM_HPP

#include <cstdint>
#include <random>
#include <stdexcept>

namespace formtopics {

/// Seedable random source. All randomness in the library flows through one of
/// these, passed in by the caller; mt19937_64 is fully specified by the
/// standard, so identical seeds give identical draws on every platform.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_raw() { return engine_(); }

  /// Uniform draw in [0, n). Rejection sampling keeps the draw unbiased and
  /// independent of std::uniform_int_distribution, whose output is
  /// implementation-defined.
  std::size_t below(std::size_t n) {
    if (n == 0) throw std::invalid_argument("RandomSource::below: n must be positive");
    const std::uint64_t span = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t raw;
    do {
      raw = engine_();
    } while (raw >= limit);
    return static_cast<std::size_t>(raw % span);
  }

  /// splitmix64-style combine for deriving per-task seeds from a master seed.
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL + (b << 1 | 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace formtopics

#endif
