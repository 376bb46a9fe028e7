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

#include "pptp/forwarding/tables.hpp"
#include "pptp/payments/channel.hpp"
#include "pptp/pricing/price_book.hpp"

#include <map>
#include <optional>
#include <string_view>

namespace pptp::fw {

enum class Role : std::uint8_t {
  Consumer,
  Router,
  Producer,
};

std::string_view to_string(Role role) noexcept;

struct ForwardAction
{
  enum class Kind : std::uint8_t {
    Forward, ///< send `packet` out of `face`
    Drop,    ///< discard; `reason` says why
  };

  Kind kind = Kind::Drop;
  FaceId face;
  Packet packet;
  Errc reason = Errc::InvalidArgument;

  static ForwardAction
  forward(FaceId face, Packet pkt)
  {
    return {Kind::Forward, face, std::move(pkt), Errc::InvalidArgument};
  }

  static ForwardAction
  drop(Errc why)
  {
    return {Kind::Drop, FaceId{}, Packet{}, why};
  }

  bool
  forwarded() const noexcept
  {
    return kind == Kind::Forward;
  }
};

/// What a node needs from the rest of the world to forward paid traffic.
struct ForwardingContext
{
  const IdentityDirectory& directory;
  payments::ChannelBook* channels = nullptr;
  Tick pit_lifetime = 100;
};

struct ForwarderCounters
{
  std::uint64_t interests_in = 0;
  std::uint64_t data_in = 0;
  std::uint64_t probes_relayed = 0;
  std::uint64_t content_relayed = 0;
  std::uint64_t data_produced = 0;
  Tokens kept;     ///< sum of per-packet shares taken out of cheques
  Tokens credited; ///< sum of inbound channel gains (>= kept when commitments were lost)
  std::map<Errc, std::uint64_t> drops;

  std::uint64_t
  total_drops() const
  {
    std::uint64_t n = 0;
    for (const auto& [_, c] : drops) {
      n += c;
    }
    return n;
  }
};

/// Forwarding engine of one router or producer.
///
/// Probe Interests are dispersed round-robin over the FIB faces (never back
/// out of the arrival face). Probe Data collects one signed price item per
/// router on its way back. Content Interests are source-routed by the tag:
/// each node pops its own item, takes its price out of the cheque and
/// forwards out of the face recorded in the item.
class Forwarder
{
public:
  Forwarder(NodeId id, Role role, KeyPair keys);

  const NodeId&
  id() const noexcept
  {
    return m_id;
  }

  Role
  role() const noexcept
  {
    return m_role;
  }

  const KeyPair&
  keys() const noexcept
  {
    return m_keys;
  }

  /// Allocates the next face (1, 2, ...) towards `neighbor`.
  FaceId
  add_face(const NodeId& neighbor);

  std::optional<NodeId>
  neighbor(FaceId face) const;

  std::optional<FaceId>
  face_to(const NodeId& neighbor) const;

  const std::map<FaceId, NodeId>&
  faces() const noexcept
  {
    return m_faces;
  }

  Fib&
  fib() noexcept
  {
    return m_fib;
  }

  const Fib&
  fib() const noexcept
  {
    return m_fib;
  }

  Pit&
  pit() noexcept
  {
    return m_pit;
  }

  const Pit&
  pit() const noexcept
  {
    return m_pit;
  }

  pricing::PriceBook&
  prices() noexcept
  {
    return m_prices;
  }

  const pricing::PriceBook&
  prices() const noexcept
  {
    return m_prices;
  }

  /// Producer only: serve names under `prefix`.
  void
  add_content(Name prefix);

  const std::vector<Name>&
  content() const noexcept
  {
    return m_content;
  }

  bool
  owns(const Name& name) const;

  /// Round-robin choice over the longest-match FIB entry, skipping `arrival`.
  /// Throws NoRoute when nothing matches or only the arrival face is left.
  FaceId
  probe_next_face(const Name& name, std::optional<FaceId> arrival = std::nullopt);

  ForwardAction
  on_interest(FaceId in_face, Packet pkt, Tick now, ForwardingContext& ctx);

  ForwardAction
  on_data(FaceId in_face, Packet pkt, Tick now, ForwardingContext& ctx);

  /// Builds the Data answering `interest`. A probe gets a one-item tag holding
  /// the producer's own signed price for `in_face`. Throws NoRoute for names
  /// the producer does not own and NoActivePrice when it has no price.
  Packet
  produce_data(const Packet& interest, FaceId in_face, Tick now);

  const ForwarderCounters&
  counters() const noexcept
  {
    return m_counters;
  }

private:
  ForwardAction
  onProbeInterest(FaceId in_face, Packet pkt, Tick now, ForwardingContext& ctx);

  ForwardAction
  onContentInterest(FaceId in_face, Packet pkt, Tick now, ForwardingContext& ctx);

  ForwardAction
  dropped(Errc why);

  NodeId m_id;
  Role m_role;
  KeyPair m_keys;
  std::map<FaceId, NodeId> m_faces;
  Fib m_fib;
  Pit m_pit;
  pricing::PriceBook m_prices;
  std::vector<Name> m_content;
  ForwarderCounters m_counters;
};

} // namespace pptp::fw
