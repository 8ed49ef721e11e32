#ifndef HYPERUNIF_RNG_HPP_
#define HYPERUNIF_RNG_HPP_

#include <cstdint>
#include <random>

namespace hyperunif {

using Engine = std::mt19937_64;

/// Identifies a reproducible random stream. Every stochastic operation takes
/// one of these; Monte Carlo loops derive one child per replicate so results
/// do not depend on thread count or scheduling.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  /// Fresh engine positioned at the start of this stream.
  Engine engine() const;

  /// Child stream for replicate `index` under a purpose tag, so that e.g. the
  /// null reference and the direction draw of one test never share draws.
  RngStream child(std::uint64_t purpose, std::uint64_t index) const;
};

// Stream purposes used across the library.
namespace purpose {
inline constexpr std::uint64_t kNullReference = 1;
inline constexpr std::uint64_t kDirections = 2;
inline constexpr std::uint64_t kKsReference = 3;
inline constexpr std::uint64_t kCalibration = 4;
inline constexpr std::uint64_t kSample = 5;
}  // namespace purpose

}  // namespace hyperunif

#endif  // HYPERUNIF_RNG_HPP_
