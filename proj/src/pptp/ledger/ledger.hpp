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

#include "pptp/core/types.hpp"

#include <map>
#include <string_view>
#include <vector>

namespace pptp::ledger {

struct Account
{
  NodeId node;
  PublicKey pubkey{};
  Tokens balance;
  Tokens security_deposit;
  bool flagged = false;
};

/// On-chain side of a payment channel: the escrowed deposits and, once
/// settled, the commitment that released them.
struct Escrow
{
  ChannelId id = 0;
  NodeId party_a;
  NodeId party_b;
  Tokens deposit_a;
  Tokens deposit_b;
  bool settled = false;
  std::optional<std::uint64_t> highest_seq;
  std::optional<CommitmentTx> final_tx;

  Tokens
  total() const
  {
    return deposit_a + deposit_b;
  }
};

enum class VerdictKind : std::uint8_t {
  Punished,
  Rejected,
};

enum class RejectReason : std::uint8_t {
  None,
  NoConflict,
  BadSignature,
  Unregistered,
  AlreadyPunished,
};

std::string_view to_string(VerdictKind kind) noexcept;
std::string_view to_string(RejectReason reason) noexcept;

struct Verdict
{
  VerdictKind kind = VerdictKind::Rejected;
  RejectReason reason = RejectReason::None;
  NodeId advertiser;
  Tokens burned;
};

struct DisputeRecord
{
  std::uint64_t height = 0;
  NodeId submitter;
  TagItem first;
  TagItem second;
  Verdict verdict;
};

struct Totals
{
  Tokens minted;
  Tokens balances;
  Tokens security_deposits;
  Tokens escrow;
  Tokens burned;

  bool
  conserved() const
  {
    return minted == balances + security_deposits + escrow + burned;
  }
};

/// In-process mock blockchain. A single deterministic state machine: every
/// accepted mutation bumps the height by one. Tokens only enter the system
/// at registration and only leave it by burning.
class Ledger : public IdentityDirectory
{
public:
  /// Mints `initial_balance + security_deposit`; the deposit is locked.
  const Account&
  register_node(const NodeId& node, const PublicKey& pubkey, Tokens initial_balance,
                Tokens security_deposit);

  const PublicKey*
  find_key(const NodeId& node) const override;

  bool
  is_registered(const NodeId& node) const
  {
    return m_accounts.count(node) != 0;
  }

  /// Escrows both deposits from the parties' on-chain balances. One channel
  /// per ordered pair.
  ChannelId
  open_escrow(const NodeId& a, const NodeId& b, Tokens deposit_a, Tokens deposit_b);

  /// Cooperative close: releases the escrow at the commitment's balances.
  void
  settle(ChannelId channel, const CommitmentTx& final_tx);

  Verdict
  submit_conflict(const TagItem& first, const TagItem& second, const NodeId& submitter);

  Tokens
  balance_of(const NodeId& node) const;

  const Account&
  account(const NodeId& node) const;

  const Escrow&
  escrow(ChannelId channel) const;

  const std::map<ChannelId, Escrow>&
  escrows() const noexcept
  {
    return m_escrows;
  }

  const std::map<NodeId, Account>&
  accounts() const noexcept
  {
    return m_accounts;
  }

  const std::vector<DisputeRecord>&
  disputes() const noexcept
  {
    return m_disputes;
  }

  Totals
  totals() const;

  std::uint64_t
  height() const noexcept
  {
    return m_height;
  }

private:
  Account&
  mutableAccount(const NodeId& node);

  std::map<NodeId, Account> m_accounts;
  std::map<ChannelId, Escrow> m_escrows;
  std::map<std::pair<NodeId, NodeId>, ChannelId> m_pairs;
  std::vector<DisputeRecord> m_disputes;
  Tokens m_minted;
  Tokens m_burned;
  std::uint64_t m_height = 0;
  ChannelId m_nextChannel = 1;
};

} // namespace pptp::ledger
