#pragma once

#include <cstdint>
#include <random>

namespace dpa {

struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// mt19937_64 keyed by (seed, stream) through std::seed_seq. Both the engine
/// and seed_seq are fully specified by the standard, and the uniform and
/// bounded draws below are written out here instead of using the
/// implementation-defined std distributions, so a given (seed, stream)
/// produces the same sequence with any conforming standard library.
class Random {
 public:
  explicit Random(RngSeed s) {
    std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                      static_cast<std::uint32_t>(s.stream),
                      static_cast<std::uint32_t>(s.stream >> 32), 0x9e3779b9u};
    engine_.seed(seq);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 prod = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        prod = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(prod);
      }
    }
    return static_cast<std::uint64_t>(prod >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dpa
