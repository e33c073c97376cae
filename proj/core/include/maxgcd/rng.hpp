#pragma once

#include <array>
#include <cstdint>

#include "maxgcd/natural.hpp"

namespace maxgcd {

// Counter-based stream (Philox 4x32-10). A stream is keyed by
// (master_seed, stream_index); the block counter advances as values are
// consumed. Distinct (seed, stream) pairs give independent reproducible
// streams, so trials can run in parallel with no shared state.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : key_(master_seed), stream_(stream_index) {}

  std::uint64_t master_seed() const { return key_; }
  std::uint64_t stream_index() const { return stream_; }

  std::uint32_t next_u32() {
    if (pos_ >= 4) refill();
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return lo | (hi << 32);
  }

  // Uniform on the open interval (0,1); never 0 or 1.
  double next_unit() {
    const double m = static_cast<double>(next_u64() >> 11);
    return (m + 0.5) * 0x1p-53;
  }

  bool next_bernoulli(double q) { return next_unit() < q; }

  // Uniform k-bit value in [0, 2^k), k >= 1.
  Natural next_bits(std::size_t k);

 private:
  void refill();

  std::uint64_t key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
};

}  // namespace maxgcd
