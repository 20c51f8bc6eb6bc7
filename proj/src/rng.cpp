/*
 *  Copyright (C) 2026 The qahybrid authors
 *  This file is part of qahybrid - hybrid quantum/classical accelerometer estimation
 *
 *  SPDX-License-Identifier: Apache-2.0
 *  See the file LICENSE.txt for more information.
 */

#include "qahybrid/rng.hpp"

#include <cmath>
#include <numbers>

using namespace qahybrid;

namespace
{
constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
constexpr int kRounds = 10;

inline void MulHiLo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}
} // namespace

Philox4x32::Block Philox4x32::Bijection(Block ctr, Key key)
{
  for (int r = 0; r < kRounds; ++r)
  {
    std::uint32_t hi0, lo0, hi1, lo1;
    MulHiLo(kMul0, ctr[0], hi0, lo0);
    MulHiLo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t channel, std::uint64_t first_block)
  : m_key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
    m_channel(channel),
    m_block(first_block)
{
}

void RandomStream::Refill()
{
  const Philox4x32::Block ctr{static_cast<std::uint32_t>(m_block),
                              static_cast<std::uint32_t>(m_block >> 32),
                              static_cast<std::uint32_t>(m_channel),
                              static_cast<std::uint32_t>(m_channel >> 32)};
  m_buffer = Philox4x32::Bijection(ctr, m_key);
  ++m_block;
  m_used = 0;
}

std::uint32_t RandomStream::NextU32()
{
  if (m_used == 4)
    Refill();
  return m_buffer[m_used++];
}

double RandomStream::Uniform()
{
  const std::uint64_t hi = NextU32() >> 5; // 27 bits
  const std::uint64_t lo = NextU32() >> 6; // 26 bits
  return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
}

double RandomStream::Normal()
{
  if (m_hasSpare)
  {
    m_hasSpare = false;
    return m_spare;
  }
  // 1 - u lies in (0, 1], keeping the log finite
  const double u1 = 1.0 - Uniform();
  const double u2 = Uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  m_spare = r * std::sin(phi);
  m_hasSpare = true;
  return r * std::cos(phi);
}
