#ifndef CUBEPACK_RNG_HPP
#define CUBEPACK_RNG_HPP

#include <cstdint>
#include <random>

namespace cubepack {

// Portable seeded generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; bounded draws use rejection sampling
// here instead of std::uniform_int_distribution, whose algorithm is
// implementation-defined. Together this makes every run bit-reproducible
// across platforms for a given seed.
//
// Child streams for parallel workers are derived with SplitMix64 from the
// master seed and the worker index.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  bool coin() { return (engine_() >> 63) != 0; }

  // Stream for worker `index` of a run seeded with `seed`.
  static Rng child(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed ^ splitmix64(index + 0x9E3779B97F4A7C15ull)));
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cubepack

#endif  // CUBEPACK_RNG_HPP
