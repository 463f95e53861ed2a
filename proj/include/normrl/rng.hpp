#pragma once

#include <cstdint>
#include <random>

namespace normrl {

// Deterministic RNG. mt19937_64 supplies the raw stream; bounded sampling is
// done by hand because std::uniform_int_distribution is implementation-defined
// and would break cross-platform reproducibility of traces and results.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Derives an independent stream from a master seed and a stream id. Streams
  // are used one-per-episode so parallel and sequential evaluation draw the
  // same numbers.
  static Rng stream(uint64_t master, uint64_t stream_id) {
    return Rng(mix(master, stream_id));
  }

  uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, n) by rejection sampling. n must be > 0.
  uint32_t below(uint32_t n) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return static_cast<uint32_t>(v % n);
  }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // splitmix64 finalizer over the pair; good enough to decorrelate streams.
  static uint64_t mix(uint64_t a, uint64_t b) {
    uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace normrl
