#pragma once

#include <cstdint>

namespace eprwmr {

/// Counter-based random generator: every variate is a pure function of
/// (seed, stream, index), so draws can be made in any order, from any thread,
/// and trajectory i sees the same noise regardless of batch size or thread
/// count. Uniforms lie strictly inside (0,1); normals use the Box-Muller
/// cosine branch on two consecutive uniform slots.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t bits(std::uint64_t stream, std::uint64_t index) const;
  double uniform_at(std::uint64_t stream, std::uint64_t index) const;
  /// N(0,1) from the uniforms at (index, index+1); consumes two index slots.
  double normal_at(std::uint64_t stream, std::uint64_t index) const;

 private:
  std::uint64_t seed_;
};

/// Sequential view over one stream for samplers that just want draw-after-draw
/// semantics. Copyable; safe to hand between threads, not to share.
struct RngStream {
  CounterRng rng;
  std::uint64_t stream = 0;
  std::uint64_t cursor = 0;

  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : rng(seed), stream(stream_id) {}

  double uniform() { return rng.uniform_at(stream, cursor++); }

  double normal() {
    double z = rng.normal_at(stream, cursor);
    cursor += 2;
    return z;
  }
};

}  // namespace eprwmr
