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

#include "pptp/consumer/bandit.hpp"
#include "pptp/consumer/utility.hpp"
#include "pptp/core/rng.hpp"
#include "pptp/payments/channel.hpp"

#include <map>
#include <vector>

namespace pptp::consumer {

/// A discovered path with its prices, in consumer-to-producer hop order.
struct PricedPath
{
  PathId id = 0;
  std::vector<TagItem> items;
  Tokens total_cost;
  double predicted_v = 0.0;
  Tick discovered_at = 0;

  /// Advertisers in hop order: first router, ..., producer.
  std::vector<NodeId>
  hops() const;
};

/// Stable 64-bit id of the ordered (advertiser, face) sequence.
PathId
path_id_of(std::span<const TagItem> items);

/// Consumer side of the protocol for one consumer node: probing, path
/// bookkeeping, path choice and cheque issuing.
class ConsumerEngine
{
public:
  ConsumerEngine(NodeId id, KeyPair keys, UtilityModel model, BanditParams params = {});

  const NodeId&
  id() const noexcept
  {
    return m_id;
  }

  const UtilityModel&
  model() const noexcept
  {
    return m_model;
  }

  /// `n` tagless, unpaid probe Interests with fresh nonces.
  std::vector<Packet>
  launch_probes(const Name& name, std::size_t n, Rng& rng) const;

  /// Verifies a returned probe tag and records the path. A path seen before
  /// only has its items and discovery time refreshed.
  /// Errors: BadSignature(i), StalePrice(i), Unregistered(i), MalformedPacket.
  const PricedPath&
  register_path(const Packet& probe_data, Tick now, const IdentityDirectory& directory);

  const PricedPath&
  path(PathId id) const;

  const std::map<PathId, PricedPath>&
  paths() const noexcept
  {
    return m_paths;
  }

  /// Path ids in first-registration order.
  const std::vector<PathId>&
  path_order() const noexcept
  {
    return m_order;
  }

  PathId
  select_path(Rng& rng)
  {
    return m_bandit.select(rng);
  }

  Bandit&
  bandit() noexcept
  {
    return m_bandit;
  }

  const Bandit&
  bandit() const noexcept
  {
    return m_bandit;
  }

  /// A content Interest for `name`/seq=<seq> pinned to `path`, carrying a
  /// cheque for the full path cost drawn on the first-hop channel.
  /// Errors: NoChannel, InsufficientChannelBalance, UnknownArm.
  Packet
  build_content_interest(PathId path, const Name& name, std::uint64_t seq,
                         payments::ChannelBook& channels, Rng& rng) const;

private:
  NodeId m_id;
  KeyPair m_keys;
  UtilityModel m_model;
  Bandit m_bandit;
  std::map<PathId, PricedPath> m_paths;
  std::vector<PathId> m_order;
};

} // namespace pptp::consumer
