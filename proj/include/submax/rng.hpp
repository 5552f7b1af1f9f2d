#pragma once

#include <cstdint>

namespace submax {

// Counter-based pseudo-random numbers: each draw is a pure function of
// (seed, stream, counter), so concurrent or replayed callers get
// bit-identical values regardless of evaluation order.
namespace rng {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t draw(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t counter) {
  return mix(mix(seed ^ (stream * 0xD1B54A32D192ED03ull)) ^
             (counter * 0x8CB92BA72F3D8DD7ull));
}

// Uniform in [0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t counter) {
  return static_cast<double>(draw(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound).  bound must be positive.
inline std::uint64_t below(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter, std::uint64_t bound) {
  return draw(seed, stream, counter) % bound;
}

}  // namespace rng

// A convenience sequential stream over the counter-based generator, for
// generators that just need a reproducible sequence.
class SeqRng {
 public:
  explicit SeqRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next() { return rng::draw(seed_, stream_, counter_++); }
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  // Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t seed_, stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace submax
