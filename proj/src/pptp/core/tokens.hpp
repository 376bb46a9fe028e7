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

#include "pptp/core/error.hpp"

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>

namespace pptp {

/// Token amount in the indivisible unit "u". Arithmetic is checked: a result
/// that does not fit throws instead of wrapping.
class Tokens
{
public:
  constexpr Tokens() noexcept = default;

  constexpr explicit Tokens(std::uint64_t amount) noexcept
    : m_amount(amount)
  {
  }

  constexpr std::uint64_t
  value() const noexcept
  {
    return m_amount;
  }

  friend Tokens
  operator+(Tokens a, Tokens b)
  {
    if (b.m_amount > std::numeric_limits<std::uint64_t>::max() - a.m_amount) {
      throw Error(Errc::TokenOverflow);
    }
    return Tokens(a.m_amount + b.m_amount);
  }

  friend Tokens
  operator-(Tokens a, Tokens b)
  {
    if (b.m_amount > a.m_amount) {
      throw Error(Errc::TokenUnderflow);
    }
    return Tokens(a.m_amount - b.m_amount);
  }

  Tokens&
  operator+=(Tokens other)
  {
    return *this = *this + other;
  }

  Tokens&
  operator-=(Tokens other)
  {
    return *this = *this - other;
  }

  friend constexpr auto operator<=>(Tokens, Tokens) noexcept = default;

private:
  std::uint64_t m_amount = 0;
};

inline std::ostream&
operator<<(std::ostream& os, Tokens t)
{
  return os << t.value() << "u";
}

} // namespace pptp
