#pragma once

#include <array>
#include <cstdint>

namespace cqpolar {

/// Philox4x32-10 block function.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key);
};

/// Random stream addressed by (seed, trial, purpose). Draw k of a stream is a
/// pure function of those coordinates and k, so trials can be evaluated in any
/// order or on any thread with identical results.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t trial, std::uint32_t purpose = 0);

  std::uint64_t next_u64();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform bit.
  std::uint8_t bit() { return static_cast<std::uint8_t>(next_u64() >> 63); }

  std::uint32_t draws() const { return draw_; }

 private:
  Philox4x32::Key key_;
  std::uint64_t trial_;
  std::uint32_t purpose_;
  std::uint32_t draw_ = 0;
};

/// Purpose tags used to separate independent streams of the same trial.
enum StreamPurpose : std::uint32_t {
  kMessageStream = 1,
  kMeasurementStream = 2,
  kChannelStream = 3,
  kFrozenStream = 4,
};

}  // namespace cqpolar
