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

#include "pptp/core/error.hpp"

namespace pptp {

std::string_view
to_string(Errc code) noexcept
{
  switch (code) {
    case Errc::TokenOverflow: return "TokenOverflow";
    case Errc::TokenUnderflow: return "TokenUnderflow";
    case Errc::Unregistered: return "Unregistered";
    case Errc::DecodeError: return "DecodeError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NoRoute: return "NoRoute";
    case Errc::TagMismatch: return "TagMismatch";
    case Errc::PitDuplicate: return "PitDuplicate";
    case Errc::NoPitEntry: return "NoPitEntry";
    case Errc::MalformedPacket: return "MalformedPacket";
    case Errc::NotTransit: return "NotTransit";
    case Errc::EquivocationRefused: return "EquivocationRefused";
    case Errc::NoActivePrice: return "NoActivePrice";
    case Errc::NotFaultMode: return "NotFaultMode";
    case Errc::BadSignature: return "BadSignature";
    case Errc::StalePrice: return "StalePrice";
    case Errc::NoSamples: return "NoSamples";
    case Errc::UnknownArm: return "UnknownArm";
    case Errc::NoChannel: return "NoChannel";
    case Errc::InsufficientChannelBalance: return "InsufficientChannelBalance";
    case Errc::InsufficientOnChainFunds: return "InsufficientOnChainFunds";
    case Errc::DuplicateChannel: return "DuplicateChannel";
    case Errc::ChannelSettled: return "ChannelSettled";
    case Errc::StaleSeq: return "StaleSeq";
    case Errc::NonConserving: return "NonConserving";
    case Errc::WrongDirection: return "WrongDirection";
    case Errc::NotParty: return "NotParty";
    case Errc::UnderfundedEnvelope: return "UnderfundedEnvelope";
    case Errc::EnvelopeMismatch: return "EnvelopeMismatch";
    case Errc::UnknownChannel: return "UnknownChannel";
    case Errc::DuplicateRegistration: return "DuplicateRegistration";
    case Errc::MissingSignature: return "MissingSignature";
    case Errc::AlreadySettled: return "AlreadySettled";
    case Errc::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

static std::string
makeMessage(Errc code, const std::string& detail, std::optional<std::size_t> index)
{
  std::string msg(to_string(code));
  if (index) {
    msg += "(" + std::to_string(*index) + ")";
  }
  if (!detail.empty()) {
    msg += ": " + detail;
  }
  return msg;
}

Error::Error(Errc code, std::string detail, std::optional<std::size_t> index)
  : std::runtime_error(makeMessage(code, detail, index))
  , m_code(code)
  , m_index(index)
{
}

} // namespace pptp
