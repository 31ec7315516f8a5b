#pragma once

#include <cstdint>
#include <random>

namespace rifs {

/// Seedable stream with a platform-independent output sequence.
///
/// The engine is std::mt19937_64, whose output is fixed by the C++ standard.
/// Standard distributions are implementation-defined, so conversions to
/// doubles are done here: uniform() takes the top 53 bits of one draw and
/// scales by 2^-53, giving a value in [0, 1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream `stream` of `seed`. seed_seq mixing is fixed by the
  /// standard, so streams of neighbouring seeds do not overlap.
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rifs
