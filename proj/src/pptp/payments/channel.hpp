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

#include "pptp/core/signing.hpp"
#include "pptp/core/types.hpp"
#include "pptp/ledger/ledger.hpp"

#include <map>
#include <optional>

namespace pptp::payments {

enum class ChannelStatus : std::uint8_t {
  Open,
  Settled,
};

/// Pairwise micropayment channel.
///
/// Two states are tracked. The accepted state (seq, balance_a, balance_b,
/// latest) only moves when the payee countersigns. The issued head is the
/// payer's view: it advances on every make_payment so several cheques can be
/// in flight on one channel. A commitment lost in transit leaves a gap in the
/// sequence; the next accepted commitment is cumulative and closes it.
class Channel
{
public:
  Channel(ChannelId id, NodeId a, NodeId b, Tokens deposit_a, Tokens deposit_b);

  ChannelId
  id() const noexcept
  {
    return m_id;
  }

  const NodeId&
  party_a() const noexcept
  {
    return m_a;
  }

  const NodeId&
  party_b() const noexcept
  {
    return m_b;
  }

  Tokens
  deposit_a() const noexcept
  {
    return m_depositA;
  }

  Tokens
  deposit_b() const noexcept
  {
    return m_depositB;
  }

  Tokens
  total() const
  {
    return m_depositA + m_depositB;
  }

  Tokens
  balance_a() const noexcept
  {
    return m_latest.balance_a;
  }

  Tokens
  balance_b() const noexcept
  {
    return m_latest.balance_b;
  }

  Tokens
  balance_of(const NodeId& party) const;

  std::uint64_t
  seq() const noexcept
  {
    return m_latest.seq;
  }

  ChannelStatus
  status() const noexcept
  {
    return m_status;
  }

  /// Highest fully signed commitment.
  const CommitmentTx&
  latest() const noexcept
  {
    return m_latest;
  }

  /// What `payer` can still commit, counting cheques already in flight.
  Tokens
  spendable(const NodeId& payer) const;

  std::uint64_t
  issued_seq() const noexcept
  {
    return m_issued.seq;
  }

  bool
  is_party(const NodeId& node) const noexcept
  {
    return node == m_a || node == m_b;
  }

  Party
  party_of(const NodeId& node) const;

  const NodeId&
  peer_of(const NodeId& node) const;

private:
  friend Channel open_channel(ledger::Ledger&, const NodeId&, const NodeId&, Tokens, Tokens,
                              const KeyPair&, const KeyPair&);
  friend CommitmentTx make_payment(Channel&, const NodeId&, Tokens, const SecretKey&);
  friend Tokens accept_payment(Channel&, const CommitmentTx&, const NodeId&, const SecretKey&,
                               const IdentityDirectory&);
  friend Tokens receive_envelope(Channel&, const PaymentEnvelope&, const NodeId&, const SecretKey&,
                                 const IdentityDirectory&);
  friend class ChannelBook;

  /// Adds the acceptor's signature to an already validated commitment and
  /// makes it the accepted state.
  void
  countersign(const CommitmentTx& tx, const NodeId& acceptor, const SecretKey& acceptor_key);

  ChannelId m_id;
  NodeId m_a;
  NodeId m_b;
  Tokens m_depositA;
  Tokens m_depositB;
  ChannelStatus m_status = ChannelStatus::Open;
  CommitmentTx m_latest;
  CommitmentTx m_issued;
};

/// Escrows the deposits on the ledger and returns the channel at seq 0 with a
/// co-signed opening commitment (so settlement always has something to
/// submit).
Channel
open_channel(ledger::Ledger& ledger, const NodeId& a, const NodeId& b, Tokens deposit_a,
             Tokens deposit_b, const KeyPair& keys_a, const KeyPair& keys_b);

/// Builds the next commitment moving `amount` from payer to peer, signed by
/// the payer only.
CommitmentTx
make_payment(Channel& channel, const NodeId& payer, Tokens amount, const SecretKey& payer_key);

/// Countersigns `tx` and advances the channel to it. Returns the amount the
/// acceptor gained relative to the previously accepted state.
Tokens
accept_payment(Channel& channel, const CommitmentTx& tx, const NodeId& acceptor,
               const SecretKey& acceptor_key, const IdentityDirectory& directory);

/// accept_payment for a cheque: additionally requires the commitment to
/// credit at least `envelope.remaining` (EnvelopeMismatch otherwise).
Tokens
receive_envelope(Channel& channel, const PaymentEnvelope& envelope, const NodeId& acceptor,
                 const SecretKey& acceptor_key, const IdentityDirectory& directory);

struct SplitResult
{
  Tokens kept;
  std::optional<PaymentEnvelope> out;
};

/// Takes `own_price` out of an accepted cheque and re-issues the remainder on
/// the next-hop channel. With no next hop (the producer) everything left is
/// kept.
SplitResult
split_and_forward(const NodeId& self, const PaymentEnvelope& in, Tokens own_price,
                  Channel* next_hop, const SecretKey& key);

/// All channels of one run, indexed by id and by ordered party pair.
class ChannelBook
{
public:
  Channel&
  open(ledger::Ledger& ledger, const NodeId& a, const NodeId& b, Tokens deposit_a, Tokens deposit_b,
       const KeyPair& keys_a, const KeyPair& keys_b);

  /// Channel to use for a payment from `payer` to `payee`: the (payer, payee)
  /// channel if one exists, else (payee, payer), else nullptr.
  Channel*
  find(const NodeId& payer, const NodeId& payee);

  Channel&
  get(ChannelId id);

  const std::map<ChannelId, Channel>&
  channels() const noexcept
  {
    return m_channels;
  }

  /// Submits every open channel's latest commitment to the ledger.
  void
  settle_all(ledger::Ledger& ledger);

private:
  std::map<ChannelId, Channel> m_channels;
  std::map<std::pair<NodeId, NodeId>, ChannelId> m_byPair;
};

} // namespace pptp::payments
