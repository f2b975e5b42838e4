#include "dpinv/rng.hpp"

namespace dpinv {
namespace {

__extension__ using Uint128 = unsigned __int128;

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

}  // namespace

Philox::Philox(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream) {}

Philox::Counter Philox::block(Counter ctr, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

void Philox::refill() noexcept {
  constexpr int kB = kBlocksPerRefill;
  std::uint32_t c0[kB], c1[kB], c2[kB], c3[kB];
  for (int b = 0; b < kB; ++b) {
    const std::uint64_t index = next_block_ + static_cast<std::uint64_t>(b);
    c0[b] = static_cast<std::uint32_t>(index);
    c1[b] = static_cast<std::uint32_t>(index >> 32);
    c2[b] = static_cast<std::uint32_t>(stream_);
    c3[b] = static_cast<std::uint32_t>(stream_ >> 32);
  }
  std::uint32_t k0 = key_[0], k1 = key_[1];
  for (int round = 0; round < 10; ++round) {
    for (int b = 0; b < kB; ++b) {
      std::uint32_t hi0, lo0, hi1, lo1;
      mulhilo(kMul0, c0[b], hi0, lo0);
      mulhilo(kMul1, c2[b], hi1, lo1);
      c0[b] = hi1 ^ c1[b] ^ k0;
      c2[b] = hi0 ^ c3[b] ^ k1;
      c1[b] = lo1;
      c3[b] = lo0;
    }
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  for (int b = 0; b < kB; ++b) {
    buffer_[2 * b] = (static_cast<std::uint64_t>(c1[b]) << 32) | c0[b];
    buffer_[2 * b + 1] = (static_cast<std::uint64_t>(c3[b]) << 32) | c2[b];
  }
  next_block_ += kB;
  pos_ = 0;
}

std::uint64_t Philox::below(std::uint64_t bound) noexcept {
  Uint128 m = static_cast<Uint128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<Uint128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace dpinv
