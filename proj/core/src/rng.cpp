#include "hyperunif/rng.hpp"

namespace hyperunif {
namespace {

// SplitMix64 finalizer; decorrelates nearby (seed, stream) pairs before they
// reach the Mersenne Twister seeding sequence.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Engine RngStream::engine() const {
  const std::uint64_t a = mix64(seed);
  const std::uint64_t b = mix64(stream ^ 0x5851f42d4c957f2dULL);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Engine(seq);
}

RngStream RngStream::child(std::uint64_t purpose_tag, std::uint64_t index) const {
  return RngStream{seed, mix64(stream ^ mix64(purpose_tag << 48 ^ index))};
}

}  // namespace hyperunif
