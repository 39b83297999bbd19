#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace ruinlab {

/// Counter-based random stream (Philox 4x64, 10 rounds).
///
/// The 128-bit key is (master_seed, stream_id), so distinct path indices get
/// provably disjoint streams and results never depend on worker count or
/// scheduling order. The 256-bit counter advances per 4-output block; word 2
/// of the counter selects an independent lane within the stream (lane 1 is
/// reserved for the Cox outer shot process so that arrival/claim draws keep
/// their prefix property when the horizon changes).
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id,
            std::uint64_t lane_id = 0)
      : key_{master_seed, stream_id}, ctr_{0, 0, lane_id, 0}, pos_(4) {}

  /// Independent lane of the same (seed, stream) pair, starting at block 0.
  RngStream lane(std::uint64_t lane_id) const {
    return RngStream(key_[0], key_[1], lane_id);
  }

  std::uint64_t next_u64() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  /// Uniform strictly inside (0,1); never returns an endpoint.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Exp(1) draw.
  double exponential() { return -std::log(uniform01()); }

 private:
  static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                      std::uint64_t& lo) {
    const unsigned __int128 p =
        static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
  }

  void refill() {
    // Counter is bumped before each block (matches the reference stream).
    if (++ctr_[0] == 0) ++ctr_[1];
    std::uint64_t c0 = ctr_[0], c1 = ctr_[1], c2 = ctr_[2], c3 = ctr_[3];
    std::uint64_t k0 = key_[0], k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        k0 += 0x9E3779B97F4A7C15ull;
        k1 += 0xBB67AE8584CAA73Bull;
      }
      std::uint64_t hi0, lo0, hi1, lo1;
      mulhilo(0xD2E7470EE14C6C93ull, c0, hi0, lo0);
      mulhilo(0xCA5A826395121157ull, c2, hi1, lo1);
      c0 = hi1 ^ c1 ^ k0;
      c1 = lo1;
      c2 = hi0 ^ c3 ^ k1;
      c3 = lo0;
    }
    buf_ = {c0, c1, c2, c3};
    pos_ = 0;
  }

  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> ctr_;
  std::array<std::uint64_t, 4> buf_{};
  int pos_;
};

/// Deterministic plan mapping path indices to sub-streams of a master seed.
struct RngStreamPlan {
  std::uint64_t master_seed = 0;

  RngStream stream_for(std::uint64_t path_index) const {
    return RngStream(master_seed, path_index);
  }
};

}  // namespace ruinlab
