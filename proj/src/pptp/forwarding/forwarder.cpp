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

#include "pptp/forwarding/forwarder.hpp"

namespace pptp::fw {

std::string_view
to_string(Role role) noexcept
{
  switch (role) {
    case Role::Consumer: return "consumer";
    case Role::Router: return "router";
    case Role::Producer: return "producer";
  }
  return "";
}

Forwarder::Forwarder(NodeId id, Role role, KeyPair keys)
  : m_id(std::move(id))
  , m_role(role)
  , m_keys(keys)
  , m_prices(m_id, m_keys.secret)
{
}

FaceId
Forwarder::add_face(const NodeId& neighbor)
{
  FaceId face{static_cast<std::uint32_t>(m_faces.size() + 1)};
  m_faces.emplace(face, neighbor);
  return face;
}

std::optional<NodeId>
Forwarder::neighbor(FaceId face) const
{
  auto it = m_faces.find(face);
  if (it == m_faces.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::optional<FaceId>
Forwarder::face_to(const NodeId& neighbor) const
{
  for (const auto& [face, n] : m_faces) {
    if (n == neighbor) {
      return face;
    }
  }
  return std::nullopt;
}

void
Forwarder::add_content(Name prefix)
{
  if (m_role != Role::Producer) {
    throw Error(Errc::InvalidArgument, m_id.value + " is not a producer");
  }
  m_content.push_back(std::move(prefix));
}

bool
Forwarder::owns(const Name& name) const
{
  for (const auto& p : m_content) {
    if (p.is_prefix_of(name)) {
      return true;
    }
  }
  return false;
}

FaceId
Forwarder::probe_next_face(const Name& name, std::optional<FaceId> arrival)
{
  FibEntry* entry = m_fib.longest_match(name);
  if (entry == nullptr) {
    throw Error(Errc::NoRoute, name.to_uri());
  }
  const std::size_t n = entry->faces.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t idx = (entry->rr_counter + i) % n;
    if (arrival && entry->faces[idx] == *arrival) {
      continue;
    }
    entry->rr_counter = idx + 1;
    return entry->faces[idx];
  }
  throw Error(Errc::NoRoute, name.to_uri() + " (only the arrival face)");
}

ForwardAction
Forwarder::dropped(Errc why)
{
  ++m_counters.drops[why];
  return ForwardAction::drop(why);
}

Packet
Forwarder::produce_data(const Packet& interest, FaceId in_face, Tick now)
{
  if (m_role != Role::Producer || !owns(interest.name)) {
    throw Error(Errc::NoRoute, interest.name.to_uri());
  }
  Packet data;
  data.kind = PacketKind::Data;
  data.name = interest.name;
  data.nonce = interest.nonce;
  data.probe = interest.probe;
  if (interest.probe) {
    PathTag tag;
    tag.push(m_prices.advertise(in_face, now));
    data.tag = std::move(tag);
  }
  else {
    data.payload_size = 1024;
  }
  ++m_counters.data_produced;
  return data;
}

ForwardAction
Forwarder::on_interest(FaceId in_face, Packet pkt, Tick now, ForwardingContext& ctx)
{
  ++m_counters.interests_in;
  if (!pkt.is_interest()) {
    return dropped(Errc::MalformedPacket);
  }
  if (m_role == Role::Consumer) {
    return dropped(Errc::NotTransit);
  }
  if (pkt.probe) {
    return onProbeInterest(in_face, std::move(pkt), now, ctx);
  }
  return onContentInterest(in_face, std::move(pkt), now, ctx);
}

ForwardAction
Forwarder::onProbeInterest(FaceId in_face, Packet pkt, Tick now, ForwardingContext& ctx)
{
  if (pkt.tag || pkt.envelope) {
    return dropped(Errc::MalformedPacket);
  }
  if (m_role == Role::Producer) {
    try {
      return ForwardAction::forward(in_face, produce_data(pkt, in_face, now));
    }
    catch (const Error& e) {
      return dropped(e.code());
    }
  }

  if (m_pit.contains(pkt.name, pkt.nonce)) {
    return dropped(Errc::PitDuplicate);
  }
  FaceId out;
  try {
    out = probe_next_face(pkt.name, in_face);
  }
  catch (const Error& e) {
    return dropped(e.code());
  }
  m_pit.insert({pkt.name, pkt.nonce, in_face, now, now + ctx.pit_lifetime});
  ++m_counters.probes_relayed;
  return ForwardAction::forward(out, std::move(pkt));
}

ForwardAction
Forwarder::onContentInterest(FaceId in_face, Packet pkt, Tick now, ForwardingContext& ctx)
{
  if (!pkt.tag || pkt.tag->empty() || !pkt.envelope) {
    return dropped(Errc::MalformedPacket);
  }
  const TagItem& top = pkt.tag->top();
  if (top.advertiser != m_id) {
    return dropped(Errc::TagMismatch);
  }

  std::optional<NodeId> downstream;
  if (m_role == Role::Router) {
    downstream = neighbor(top.face);
    if (!downstream) {
      return dropped(Errc::TagMismatch);
    }
    if (m_pit.contains(pkt.name, pkt.nonce)) {
      return dropped(Errc::PitDuplicate);
    }
  }
  else {
    if (pkt.tag->size() != 1) {
      return dropped(Errc::TagMismatch);
    }
    if (!owns(pkt.name)) {
      return dropped(Errc::NoRoute);
    }
  }

  TagItem mine = pkt.tag->pop();

  auto upstream = neighbor(in_face);
  if (!upstream || ctx.channels == nullptr) {
    return dropped(Errc::NoChannel);
  }
  payments::Channel* inbound = ctx.channels->find(*upstream, m_id);
  payments::Channel* outbound = downstream ? ctx.channels->find(m_id, *downstream) : nullptr;
  if (inbound == nullptr || (downstream && outbound == nullptr)) {
    return dropped(Errc::NoChannel);
  }

  try {
    Tokens gained = payments::receive_envelope(*inbound, *pkt.envelope, m_id, m_keys.secret, ctx.directory);
    m_counters.credited += gained;
  }
  catch (const Error& e) {
    return dropped(e.code());
  }

  payments::SplitResult split;
  try {
    split = payments::split_and_forward(m_id, *pkt.envelope, mine.price, outbound, m_keys.secret);
  }
  catch (const Error& e) {
    // the inbound cheque stays accepted; nothing is refunded upstream
    return dropped(e.code());
  }
  m_counters.kept += split.kept;

  if (m_role == Role::Producer) {
    return ForwardAction::forward(in_face, produce_data(pkt, in_face, now));
  }

  pkt.envelope = std::move(split.out);
  m_pit.insert({pkt.name, pkt.nonce, in_face, now, now + ctx.pit_lifetime});
  ++m_counters.content_relayed;
  return ForwardAction::forward(mine.face, std::move(pkt));
}

ForwardAction
Forwarder::on_data(FaceId in_face, Packet pkt, Tick now, ForwardingContext&)
{
  ++m_counters.data_in;
  if (pkt.is_interest() || m_role != Role::Router) {
    return dropped(Errc::NotTransit);
  }
  auto entry = m_pit.take(pkt.name, pkt.nonce);
  if (!entry) {
    return dropped(Errc::NoPitEntry);
  }
  if (pkt.probe) {
    if (!pkt.tag) {
      return dropped(Errc::MalformedPacket);
    }
    try {
      pkt.tag->push(m_prices.advertise(in_face, now));
    }
    catch (const Error& e) {
      return dropped(e.code());
    }
  }
  return ForwardAction::forward(entry->in_face, std::move(pkt));
}

} // namespace pptp::fw
