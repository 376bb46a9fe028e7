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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pptp {

/// Every protocol-level failure the library can report. The forwarding plane
/// turns most of these into drop counters; the API layers turn them into
/// exceptions.
enum class Errc {
  // core-model
  TokenOverflow,
  TokenUnderflow,
  Unregistered,
  DecodeError,
  InvalidArgument,
  // forwarding
  NoRoute,
  TagMismatch,
  PitDuplicate,
  NoPitEntry,
  MalformedPacket,
  NotTransit,
  // pricing
  EquivocationRefused,
  NoActivePrice,
  NotFaultMode,
  // consumer
  BadSignature,
  StalePrice,
  NoSamples,
  UnknownArm,
  // payments
  NoChannel,
  InsufficientChannelBalance,
  InsufficientOnChainFunds,
  DuplicateChannel,
  ChannelSettled,
  StaleSeq,
  NonConserving,
  WrongDirection,
  NotParty,
  UnderfundedEnvelope,
  EnvelopeMismatch,
  UnknownChannel,
  // ledger
  DuplicateRegistration,
  MissingSignature,
  AlreadySettled,
  // harness
  InvariantViolation,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error
{
public:
  explicit Error(Errc code, std::string detail = {}, std::optional<std::size_t> index = std::nullopt);

  Errc
  code() const noexcept
  {
    return m_code;
  }

  /// Position of the offending element for list-shaped inputs (e.g. the tag
  /// item that failed verification).
  std::optional<std::size_t>
  index() const noexcept
  {
    return m_index;
  }

private:
  Errc m_code;
  std::optional<std::size_t> m_index;
};

} // namespace pptp
