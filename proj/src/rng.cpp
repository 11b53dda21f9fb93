#include "eprwmr/rng.hpp"

#include <cmath>
#include <numbers>

namespace eprwmr {
namespace {

// murmur3 fmix64: full-avalanche bijective mixer.
inline std::uint64_t mix(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t stream, std::uint64_t index) const {
  std::uint64_t h = mix(seed_ + 0x9e3779b97f4a7c15ULL);
  h = mix(h ^ (stream * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL));
  h = mix(h ^ (index * 0x2545f4914f6cdd1dULL + 0x9e3779b97f4a7c15ULL));
  return h;
}

double CounterRng::uniform_at(std::uint64_t stream, std::uint64_t index) const {
  // 53-bit mantissa, offset by half an ulp so the result is never 0 or 1.
  return (static_cast<double>(bits(stream, index) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal_at(std::uint64_t stream, std::uint64_t index) const {
  const double u1 = uniform_at(stream, index);
  const double u2 = uniform_at(stream, index + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace eprwmr
