#include "maxgcd/rng.hpp"

#include <stdexcept>
#include <vector>

namespace maxgcd {

namespace {

inline void philox_round(std::array<std::uint32_t, 4>& c, std::uint32_t k0,
                         std::uint32_t k1) {
  const std::uint64_t m0 = 0xD2511F53ull * c[0];
  const std::uint64_t m1 = 0xCD9E8D57ull * c[2];
  c = {static_cast<std::uint32_t>(m1 >> 32) ^ c[1] ^ k0,
       static_cast<std::uint32_t>(m1),
       static_cast<std::uint32_t>(m0 >> 32) ^ c[3] ^ k1,
       static_cast<std::uint32_t>(m0)};
}

}  // namespace

void RngStream::refill() {
  std::array<std::uint32_t, 4> c = {
      static_cast<std::uint32_t>(block_),
      static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(stream_),
      static_cast<std::uint32_t>(stream_ >> 32)};
  std::uint32_t k0 = static_cast<std::uint32_t>(key_);
  std::uint32_t k1 = static_cast<std::uint32_t>(key_ >> 32);
  for (int r = 0; r < 10; ++r) {
    philox_round(c, k0, k1);
    k0 += 0x9E3779B9u;
    k1 += 0xBB67AE85u;
  }
  buf_ = c;
  ++block_;
  pos_ = 0;
}

Natural RngStream::next_bits(std::size_t k) {
  if (k == 0) throw std::invalid_argument("next_bits: k must be >= 1");
  const std::size_t words = (k + 31) / 32;
  std::vector<std::uint32_t> w(words);
  for (std::size_t i = 0; i < words; ++i) w[i] = next_u32();
  const std::size_t rem = k % 32;
  if (rem != 0) w[words - 1] &= (std::uint32_t{1} << rem) - 1;
  Natural out;
  mpz_import(out.get_mpz_t(), words, -1, sizeof(std::uint32_t), 0, 0, w.data());
  return out;
}

}  // namespace maxgcd
