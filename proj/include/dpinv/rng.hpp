#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace dpinv {

// Philox4x32-10 counter-based generator. A stream is fully determined by
// (key, stream id); block i of the stream is philox(key, {i_lo, i_hi,
// stream_lo, stream_hi}), so any draw can be regenerated without replaying
// the ones before it.
class Philox {
 public:
  using result_type = std::uint64_t;
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox(std::uint64_t seed, std::uint64_t stream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    if (pos_ == kBuffered) refill();
    return buffer_[pos_++];
  }

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound) noexcept;

  static Counter block(Counter ctr, Key key) noexcept;

 private:
  // Blocks are computed four at a time; the output order is unchanged.
  static constexpr int kBlocksPerRefill = 4;
  static constexpr int kBuffered = 2 * kBlocksPerRefill;

  void refill() noexcept;

  Key key_;
  std::uint64_t stream_;
  std::uint64_t next_block_ = 0;
  std::array<std::uint64_t, kBuffered> buffer_{};
  int pos_ = kBuffered;
};

// SplitMix64 in counter mode: output i is mix64(key + (i + 1) * gamma). Much
// cheaper per word than Philox, used for long weight vectors whose key is the
// first word of a Philox substream.
class SplitMixStream {
 public:
  using result_type = std::uint64_t;

  explicit SplitMixStream(std::uint64_t key) noexcept : state_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Stream ids pack a purpose tag with two indices so distinct consumers of one
// seed never share a stream: [tag:8][sub:16][index:40].
enum class StreamTag : std::uint8_t {
  DirichletDraw = 1,
  StickBreaking = 2,
  BayesianBootstrap = 3,
  FrequentistBootstrap = 4,
  TwoArm = 5,
  CheckTrial = 6,
  CheckSetup = 7,
  Synthetic = 8,
};

constexpr std::uint64_t stream_id(StreamTag tag, std::uint64_t sub, std::uint64_t index) noexcept {
  return (static_cast<std::uint64_t>(tag) << 56) | ((sub & 0xFFFFu) << 40) |
         (index & ((std::uint64_t{1} << 40) - 1));
}

inline Philox substream(std::uint64_t seed, StreamTag tag, std::uint64_t sub,
                        std::uint64_t index) noexcept {
  return Philox(seed, stream_id(tag, sub, index));
}

inline SplitMixStream bulk_substream(std::uint64_t seed, StreamTag tag, std::uint64_t sub,
                                     std::uint64_t index) noexcept {
  Philox keyer = substream(seed, tag, sub, index);
  return SplitMixStream(keyer());
}

}  // namespace dpinv
