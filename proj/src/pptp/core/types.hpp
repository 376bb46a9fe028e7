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

#include "pptp/core/crypto.hpp"
#include "pptp/core/tokens.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace pptp {

/// Simulation time. One tick is treated as one millisecond by default.
using Tick = std::uint64_t;

inline constexpr Tick kForever = std::numeric_limits<Tick>::max();

/// Hierarchical content name, e.g. /video/movie1/seq=4.
class Name
{
public:
  Name() = default;

  explicit Name(std::vector<std::string> components);

  /// Parses "/a/b/c". Empty components ("//") and an empty name are rejected.
  static Name
  parse(std::string_view uri);

  const std::vector<std::string>&
  components() const noexcept
  {
    return m_components;
  }

  std::size_t
  size() const noexcept
  {
    return m_components.size();
  }

  bool
  empty() const noexcept
  {
    return m_components.empty();
  }

  bool
  is_prefix_of(const Name& other) const noexcept;

  Name
  append(std::string component) const;

  std::string
  to_uri() const;

  friend auto operator<=>(const Name&, const Name&) = default;
  friend bool operator==(const Name&, const Name&) = default;

private:
  std::vector<std::string> m_components;
};

inline std::ostream&
operator<<(std::ostream& os, const Name& n)
{
  return os << n.to_uri();
}

struct NodeId
{
  std::string value;

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
  friend bool operator==(const NodeId&, const NodeId&) = default;
};

inline std::ostream&
operator<<(std::ostream& os, const NodeId& id)
{
  return os << id.value;
}

/// Node-local interface number; each (node, face) is one end of one link.
struct FaceId
{
  std::uint32_t value = 0;

  friend auto operator<=>(FaceId, FaceId) = default;
};

inline std::ostream&
operator<<(std::ostream& os, FaceId f)
{
  return os << "f" << f.value;
}

/// Closed validity interval [not_before, not_after]. The upper bound is the
/// advertised "due time" before which a price may not change.
struct Window
{
  Tick not_before = 0;
  Tick not_after = 0;

  bool
  valid() const noexcept
  {
    return not_before <= not_after;
  }

  bool
  contains(Tick t) const noexcept
  {
    return not_before <= t && t <= not_after;
  }

  friend bool operator==(const Window&, const Window&) = default;
};

inline bool
overlap(const Window& a, const Window& b) noexcept
{
  return std::max(a.not_before, b.not_before) <= std::min(a.not_after, b.not_after);
}

struct PerfMetric
{
  std::uint64_t adv_bandwidth = 0; ///< packets per tick
  std::uint64_t adv_latency = 0;   ///< ticks, one hop

  friend bool operator==(const PerfMetric&, const PerfMetric&) = default;
};

/// One priced, signed hop record. The signature covers the canonical encoding
/// of every other field.
struct TagItem
{
  NodeId advertiser;
  FaceId face;
  Tokens price;
  Window window;
  PerfMetric metric;
  Signature signature{};

  friend bool operator==(const TagItem&, const TagItem&) = default;
};

/// Stack of tag items. Items are pushed while the probe Data travels from the
/// producer towards the consumer, so the top is the consumer-adjacent hop.
class PathTag
{
public:
  PathTag() = default;

  void
  push(TagItem item)
  {
    m_items.push_back(std::move(item));
  }

  /// Removes and returns the top item. Throws MalformedPacket when empty.
  TagItem
  pop();

  const TagItem&
  top() const;

  std::size_t
  size() const noexcept
  {
    return m_items.size();
  }

  bool
  empty() const noexcept
  {
    return m_items.empty();
  }

  /// Bottom-to-top (producer first).
  const std::vector<TagItem>&
  items() const noexcept
  {
    return m_items;
  }

  /// Top-to-bottom, i.e. consumer to producer.
  std::vector<TagItem>
  consumer_order() const
  {
    return {m_items.rbegin(), m_items.rend()};
  }

  friend bool operator==(const PathTag&, const PathTag&) = default;

private:
  std::vector<TagItem> m_items;
};

using ChannelId = std::uint64_t;

/// Off-chain balance snapshot of a channel. Fully signed when both parties
/// have signed the canonical encoding.
struct CommitmentTx
{
  ChannelId channel = 0;
  std::uint64_t seq = 0;
  Tokens balance_a;
  Tokens balance_b;
  std::optional<Signature> sig_a;
  std::optional<Signature> sig_b;

  bool
  fully_signed() const noexcept
  {
    return sig_a.has_value() && sig_b.has_value();
  }

  friend bool operator==(const CommitmentTx&, const CommitmentTx&) = default;
};

/// The cheque carried by a content Interest. `remaining` is what is left for
/// this hop and everything downstream of it.
struct PaymentEnvelope
{
  Tokens remaining;
  CommitmentTx commitment;

  friend bool operator==(const PaymentEnvelope&, const PaymentEnvelope&) = default;
};

enum class PacketKind : std::uint8_t {
  Interest,
  Data,
};

struct Packet
{
  PacketKind kind = PacketKind::Interest;
  Name name;
  std::uint64_t nonce = 0;
  bool probe = false;
  std::optional<PathTag> tag;
  std::optional<PaymentEnvelope> envelope;
  std::uint32_t payload_size = 0;

  bool
  is_interest() const noexcept
  {
    return kind == PacketKind::Interest;
  }
};

/// Resolves a node identity to the verification key registered for it.
class IdentityDirectory
{
public:
  virtual ~IdentityDirectory() = default;

  virtual const PublicKey*
  find_key(const NodeId& node) const = 0;
};

} // namespace pptp

template<>
struct std::hash<pptp::NodeId>
{
  std::size_t
  operator()(const pptp::NodeId& id) const noexcept
  {
    return std::hash<std::string>{}(id.value);
  }
};
