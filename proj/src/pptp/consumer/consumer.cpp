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

#include "pptp/consumer/consumer.hpp"
#include "pptp/core/signing.hpp"

namespace pptp::consumer {

std::vector<NodeId>
PricedPath::hops() const
{
  std::vector<NodeId> out;
  out.reserve(items.size());
  for (const auto& item : items) {
    out.push_back(item.advertiser);
  }
  return out;
}

PathId
path_id_of(std::span<const TagItem> items)
{
  Bytes buf;
  for (const auto& item : items) {
    const auto& adv = item.advertiser.value;
    buf.push_back(static_cast<std::uint8_t>(adv.size() >> 8));
    buf.push_back(static_cast<std::uint8_t>(adv.size()));
    buf.insert(buf.end(), adv.begin(), adv.end());
    for (int shift = 24; shift >= 0; shift -= 8) {
      buf.push_back(static_cast<std::uint8_t>(item.face.value >> shift));
    }
  }
  Digest d = sha256(buf);
  PathId id = 0;
  for (int i = 0; i < 8; ++i) {
    id = (id << 8) | d[i];
  }
  return id;
}

ConsumerEngine::ConsumerEngine(NodeId id, KeyPair keys, UtilityModel model, BanditParams params)
  : m_id(std::move(id))
  , m_keys(keys)
  , m_model(model)
  , m_bandit(params)
{
  m_model.validate();
}

std::vector<Packet>
ConsumerEngine::launch_probes(const Name& name, std::size_t n, Rng& rng) const
{
  if (n == 0) {
    throw Error(Errc::InvalidArgument, "probe count must be >= 1");
  }
  std::vector<Packet> probes;
  probes.reserve(n);
  while (probes.size() < n) {
    Packet p;
    p.kind = PacketKind::Interest;
    p.name = name;
    p.nonce = rng.next();
    p.probe = true;
    bool fresh = true;
    for (const auto& q : probes) {
      fresh = fresh && q.nonce != p.nonce;
    }
    if (fresh) {
      probes.push_back(std::move(p));
    }
  }
  return probes;
}

const PricedPath&
ConsumerEngine::register_path(const Packet& probe_data, Tick now, const IdentityDirectory& directory)
{
  if (probe_data.is_interest() || !probe_data.probe || !probe_data.tag || probe_data.tag->empty()) {
    throw Error(Errc::MalformedPacket, "expected probe Data with a non-empty tag");
  }
  std::vector<TagItem> items = probe_data.tag->consumer_order();
  for (std::size_t i = 0; i < items.size(); ++i) {
    bool ok;
    try {
      ok = verify_item(items[i], directory);
    }
    catch (const Error& e) {
      throw Error(e.code(), items[i].advertiser.value, i);
    }
    if (!ok) {
      throw Error(Errc::BadSignature, items[i].advertiser.value, i);
    }
    if (!items[i].window.contains(now)) {
      throw Error(Errc::StalePrice, items[i].advertiser.value, i);
    }
  }

  PricedPath path;
  path.id = path_id_of(items);
  path.total_cost = path_cost(items);
  path.predicted_v = predict_v(items, m_model);
  path.discovered_at = now;
  path.items = std::move(items);

  auto [it, inserted] = m_paths.insert_or_assign(path.id, std::move(path));
  if (inserted) {
    m_order.push_back(it->first);
  }
  m_bandit.add_arm(it->first, utility(it->second.predicted_v, it->second.total_cost, m_model.eps_floor));
  return it->second;
}

const PricedPath&
ConsumerEngine::path(PathId id) const
{
  auto it = m_paths.find(id);
  if (it == m_paths.end()) {
    throw Error(Errc::UnknownArm, std::to_string(id));
  }
  return it->second;
}

Packet
ConsumerEngine::build_content_interest(PathId id, const Name& name, std::uint64_t seq,
                                       payments::ChannelBook& channels, Rng& rng) const
{
  const PricedPath& p = path(id);
  const NodeId& firstHop = p.items.front().advertiser;
  payments::Channel* ch = channels.find(m_id, firstHop);
  if (ch == nullptr) {
    throw Error(Errc::NoChannel, m_id.value + "->" + firstHop.value);
  }

  Packet pkt;
  pkt.kind = PacketKind::Interest;
  pkt.name = name.append("seq=" + std::to_string(seq));
  pkt.nonce = rng.next();
  pkt.probe = false;

  PathTag tag;
  for (auto it = p.items.rbegin(); it != p.items.rend(); ++it) {
    tag.push(*it);
  }
  pkt.tag = std::move(tag);

  PaymentEnvelope env;
  env.remaining = p.total_cost;
  env.commitment = payments::make_payment(*ch, m_id, p.total_cost, m_keys.secret);
  pkt.envelope = std::move(env);
  return pkt;
}

} // namespace pptp::consumer
