#pragma once

#include <array>
#include <cstdint>

namespace lrtbench {

/// Philox4x32-10 block function (Salmon, Moraes, Dror, Shaw; SC'11).
/// Pure function of (counter, key); no internal state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer, used to derive child seeds from (seed, tag, index).
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0);

/// Stream domains. Each domain owns an independent family of counter streams
/// so that, for example, initial conditions never share draws with noise.
enum class StreamDomain : std::uint32_t {
  initial_condition = 1,
  path_noise = 2,
  kernel_draw = 3,
  split = 4,
  cross_validation = 5,
  monte_carlo = 6,
  bootstrap = 7,
  test = 99,
};

/// Random stream addressed by (seed, domain, lane, index). The i-th draw of a
/// stream is philox(counter = (i, index, lane, domain), key = seed), so any
/// stream can be reproduced independently of how work is scheduled.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, StreamDomain domain, std::uint32_t lane,
               std::uint32_t index);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Standard normal via Box-Muller.
  double normal();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lrtbench
