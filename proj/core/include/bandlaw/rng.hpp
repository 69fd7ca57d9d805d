#pragma once

#include <cstdint>

namespace bandlaw::ensembles {

// Counter-based random stream: output(i) = mix(key(seed, stream) + i * gamma).
// Identical (seed, stream) reproduce a bit-identical sequence; distinct
// streams are decorrelated, so replicas can draw from their own streams in
// parallel without coordination. A single stream must not be shared across
// threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Same seed, different stream, counter reset to zero.
  RngStream with_stream(std::uint64_t stream) const { return RngStream(seed_, stream); }

  std::uint64_t next_u64();
  double uniform01();  // [0, 1)
  double normal();     // standard normal (Box-Muller, pairs cached)
  double rademacher();  // -1 or +1, fair
  // Uniform integer in [0, n); n must be positive.
  std::uint64_t uniform_below(std::uint64_t n);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bandlaw::ensembles
