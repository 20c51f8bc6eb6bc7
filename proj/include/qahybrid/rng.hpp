/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */
#pragma once

#include <array>
#include <cstdint>

namespace qahybrid
{

/*!
 * \brief Philox4x32-10 counter-based generator
 *
 * A stream is identified by (seed, channel). The seed is the 64-bit key, the
 * channel fills the upper counter words, the block index the lower ones. Any
 * sample of any channel can be reproduced without generating its predecessors.
 */
class Philox4x32
{
public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block Bijection(Block counter, Key key);
};

/*!
 * \brief Sequential draws from one (seed, channel) sub-stream
 */
class RandomStream
{
public:
  RandomStream(std::uint64_t seed, std::uint64_t channel, std::uint64_t first_block = 0);

  std::uint32_t NextU32();

  /// Uniform in [0, 1) with 53 random bits
  double Uniform();

  /// Standard normal, Box-Muller on two uniforms, both outputs used
  double Normal();

  double Normal(double stddev) { return stddev * Normal(); }

private:
  void Refill();

  Philox4x32::Key m_key;
  std::uint64_t m_channel;
  std::uint64_t m_block;
  Philox4x32::Block m_buffer{};
  unsigned m_used{4};
  bool m_hasSpare{false};
  double m_spare{0};
};

/// Channel identifiers used by the generators
namespace channel
{
inline constexpr std::uint64_t kAccelZ = 0;
inline constexpr std::uint64_t kCaNoise = 1;
inline constexpr std::uint64_t kDetection = 2;
inline constexpr std::uint64_t kOmegaX = 3;
inline constexpr std::uint64_t kOmegaY = 4;
inline constexpr std::uint64_t kOmegaZ = 5;
inline constexpr std::uint64_t kAccelX = 6;
inline constexpr std::uint64_t kAccelY = 7;
inline constexpr std::uint64_t kModulation = 8;
} // namespace channel

} // namespace qahybrid
