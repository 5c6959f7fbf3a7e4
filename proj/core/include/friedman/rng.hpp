// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace friedman {

//! Identifies one reproducible random stream: the seed keys the generator and
//! the stream index occupies the upper half of the counter.
struct RngContract {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

//! Philox4x32-10 counter-based generator.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(RngContract contract);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();
  std::uint64_t next_u64();
  //! Uniform on {0, ..., bound - 1}; bound >= 1. Bitwise identical on every platform.
  std::uint32_t uniform_below(std::uint32_t bound);
  //! Uniform on [0, 1) with 53 random bits.
  double uniform01();

  //! One application of the ten-round block function.
  static Block block(Block counter, Key key);

 private:
  void refill();

  Key key_;
  Block counter_;
  Block buffer_{};
  int used_ = 4;
};

}  // namespace friedman
