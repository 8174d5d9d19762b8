#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace ghostcs {

/// Independent purposes drawing from the same user seed get disjoint streams.
enum class StreamPurpose : std::uint32_t {
  PhaseMask = 1,
  SpectralPhase = 2,
  BucketNoise = 3,
  Test = 99,
};

/// Deterministic random stream keyed by (seed, index, purpose). Any single
/// realization can be regenerated without drawing its predecessors, and the
/// output is bit-identical across standard libraries: only the engine (fully
/// specified by the standard) is used, never the std distributions.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t index, StreamPurpose purpose);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace ghostcs
