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

#include "pptp/payments/channel.hpp"

namespace pptp::payments {

namespace {

Tokens&
slot(CommitmentTx& tx, Party p)
{
  return p == Party::A ? tx.balance_a : tx.balance_b;
}

Tokens
slot(const CommitmentTx& tx, Party p)
{
  return p == Party::A ? tx.balance_a : tx.balance_b;
}

Party
other(Party p)
{
  return p == Party::A ? Party::B : Party::A;
}

std::optional<Signature>&
sigSlot(CommitmentTx& tx, Party p)
{
  return p == Party::A ? tx.sig_a : tx.sig_b;
}

} // namespace

Channel::Channel(ChannelId id, NodeId a, NodeId b, Tokens deposit_a, Tokens deposit_b)
  : m_id(id)
  , m_a(std::move(a))
  , m_b(std::move(b))
  , m_depositA(deposit_a)
  , m_depositB(deposit_b)
{
  m_latest.channel = id;
  m_latest.seq = 0;
  m_latest.balance_a = deposit_a;
  m_latest.balance_b = deposit_b;
  m_issued = m_latest;
}

Party
Channel::party_of(const NodeId& node) const
{
  if (node == m_a) {
    return Party::A;
  }
  if (node == m_b) {
    return Party::B;
  }
  throw Error(Errc::NotParty, node.value);
}

const NodeId&
Channel::peer_of(const NodeId& node) const
{
  return party_of(node) == Party::A ? m_b : m_a;
}

Tokens
Channel::balance_of(const NodeId& party) const
{
  return slot(m_latest, party_of(party));
}

Tokens
Channel::spendable(const NodeId& payer) const
{
  return slot(m_issued, party_of(payer));
}

Channel
open_channel(ledger::Ledger& ledger, const NodeId& a, const NodeId& b, Tokens deposit_a,
             Tokens deposit_b, const KeyPair& keys_a, const KeyPair& keys_b)
{
  ChannelId id = ledger.open_escrow(a, b, deposit_a, deposit_b);
  Channel ch(id, a, b, deposit_a, deposit_b);
  ch.m_latest.sig_a = sign_commitment(keys_a.secret, ch.m_latest);
  ch.m_latest.sig_b = sign_commitment(keys_b.secret, ch.m_latest);
  ch.m_issued = ch.m_latest;
  return ch;
}

CommitmentTx
make_payment(Channel& channel, const NodeId& payer, Tokens amount, const SecretKey& payer_key)
{
  if (channel.m_status == ChannelStatus::Settled) {
    throw Error(Errc::ChannelSettled, std::to_string(channel.id()));
  }
  Party from = channel.party_of(payer);
  if (slot(channel.m_issued, from) < amount) {
    throw Error(Errc::InsufficientChannelBalance, payer.value);
  }

  CommitmentTx tx;
  tx.channel = channel.id();
  tx.seq = channel.m_issued.seq + 1;
  tx.balance_a = channel.m_issued.balance_a;
  tx.balance_b = channel.m_issued.balance_b;
  slot(tx, from) -= amount;
  slot(tx, other(from)) += amount;
  sigSlot(tx, from) = sign_commitment(payer_key, tx);

  channel.m_issued = tx;
  return tx;
}

namespace {

/// Validation shared by accept_payment and receive_envelope; returns the
/// acceptor's gain.
Tokens
checkIncoming(const Channel& channel, const CommitmentTx& tx, const NodeId& acceptor,
              const IdentityDirectory& directory)
{
  if (channel.status() == ChannelStatus::Settled) {
    throw Error(Errc::ChannelSettled, std::to_string(channel.id()));
  }
  if (tx.channel != channel.id()) {
    throw Error(Errc::UnknownChannel, "commitment for channel " + std::to_string(tx.channel));
  }
  Party me = channel.party_of(acceptor);
  Party payer = other(me);
  if (tx.seq <= channel.seq()) {
    throw Error(Errc::StaleSeq, std::to_string(tx.seq));
  }
  if (tx.balance_a.value() > channel.total().value() ||
      tx.balance_b.value() != channel.total().value() - tx.balance_a.value()) {
    throw Error(Errc::NonConserving);
  }
  const NodeId& payerId = payer == Party::A ? channel.party_a() : channel.party_b();
  const PublicKey* key = directory.find_key(payerId);
  if (key == nullptr) {
    throw Error(Errc::Unregistered, payerId.value);
  }
  if (!verify_commitment(tx, payer, *key)) {
    throw Error(Errc::BadSignature, "payer signature");
  }
  Tokens before = channel.balance_of(acceptor);
  Tokens after = slot(tx, me);
  if (after < before) {
    throw Error(Errc::WrongDirection);
  }
  return after - before;
}

} // namespace

void
Channel::countersign(const CommitmentTx& tx, const NodeId& acceptor, const SecretKey& acceptor_key)
{
  CommitmentTx signedTx = tx;
  sigSlot(signedTx, party_of(acceptor)) = sign_commitment(acceptor_key, tx);
  m_latest = signedTx;
  if (m_issued.seq < signedTx.seq) {
    m_issued = signedTx;
  }
}

Tokens
accept_payment(Channel& channel, const CommitmentTx& tx, const NodeId& acceptor,
               const SecretKey& acceptor_key, const IdentityDirectory& directory)
{
  Tokens gained = checkIncoming(channel, tx, acceptor, directory);
  channel.countersign(tx, acceptor, acceptor_key);
  return gained;
}

Tokens
receive_envelope(Channel& channel, const PaymentEnvelope& envelope, const NodeId& acceptor,
                 const SecretKey& acceptor_key, const IdentityDirectory& directory)
{
  Tokens gained = checkIncoming(channel, envelope.commitment, acceptor, directory);
  if (gained < envelope.remaining) {
    throw Error(Errc::EnvelopeMismatch, "commitment credits less than the cheque amount");
  }
  channel.countersign(envelope.commitment, acceptor, acceptor_key);
  return gained;
}

SplitResult
split_and_forward(const NodeId& self, const PaymentEnvelope& in, Tokens own_price,
                  Channel* next_hop, const SecretKey& key)
{
  if (in.remaining < own_price) {
    throw Error(Errc::UnderfundedEnvelope, self.value);
  }
  if (next_hop == nullptr) {
    return {in.remaining, std::nullopt};
  }
  Tokens forward = in.remaining - own_price;
  PaymentEnvelope out;
  out.remaining = forward;
  out.commitment = make_payment(*next_hop, self, forward, key);
  return {own_price, std::move(out)};
}

Channel&
ChannelBook::open(ledger::Ledger& ledger, const NodeId& a, const NodeId& b, Tokens deposit_a,
                  Tokens deposit_b, const KeyPair& keys_a, const KeyPair& keys_b)
{
  Channel ch = open_channel(ledger, a, b, deposit_a, deposit_b, keys_a, keys_b);
  ChannelId id = ch.id();
  m_byPair[{a, b}] = id;
  return m_channels.emplace(id, std::move(ch)).first->second;
}

Channel*
ChannelBook::find(const NodeId& payer, const NodeId& payee)
{
  auto it = m_byPair.find({payer, payee});
  if (it == m_byPair.end()) {
    it = m_byPair.find({payee, payer});
  }
  return it == m_byPair.end() ? nullptr : &m_channels.at(it->second);
}

Channel&
ChannelBook::get(ChannelId id)
{
  auto it = m_channels.find(id);
  if (it == m_channels.end()) {
    throw Error(Errc::UnknownChannel, std::to_string(id));
  }
  return it->second;
}

void
ChannelBook::settle_all(ledger::Ledger& ledger)
{
  for (auto& [id, ch] : m_channels) {
    if (ch.m_status == ChannelStatus::Settled) {
      continue;
    }
    ledger.settle(id, ch.m_latest);
    ch.m_status = ChannelStatus::Settled;
  }
}

} // namespace pptp::payments
