/* Copyright (c) 2026, PPTP Simulator Contributors
 *
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 the "License";
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>

namespace pptp {

/// Seeded generator. The derived draws are computed here rather than with
/// <random> distributions, whose output differs between standard libraries.
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
    : m_engine(seed)
  {
  }

  std::uint64_t
  next()
  {
    return m_engine();
  }

  /// Uniform on [0, 1) with 53 bits of precision.
  double
  uniform01()
  {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [0, n). n must be positive.
  std::uint64_t
  below(std::uint64_t n)
  {
    // rejection sampling keeps the draw unbiased
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

private:
  std::mt19937_64 m_engine;
};

} // namespace pptp
