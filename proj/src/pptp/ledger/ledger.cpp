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

#include "pptp/ledger/ledger.hpp"
#include "pptp/core/signing.hpp"
#include "pptp/pricing/price_book.hpp"

namespace pptp::ledger {

std::string_view
to_string(VerdictKind kind) noexcept
{
  return kind == VerdictKind::Punished ? "Punished" : "Rejected";
}

std::string_view
to_string(RejectReason reason) noexcept
{
  switch (reason) {
    case RejectReason::None: return "";
    case RejectReason::NoConflict: return "NoConflict";
    case RejectReason::BadSignature: return "BadSignature";
    case RejectReason::Unregistered: return "Unregistered";
    case RejectReason::AlreadyPunished: return "AlreadyPunished";
  }
  return "";
}

const Account&
Ledger::register_node(const NodeId& node, const PublicKey& pubkey, Tokens initial_balance,
                      Tokens security_deposit)
{
  if (m_accounts.count(node) != 0) {
    throw Error(Errc::DuplicateRegistration, node.value);
  }
  Tokens minted = m_minted + initial_balance + security_deposit;
  auto& acct = m_accounts[node];
  acct.node = node;
  acct.pubkey = pubkey;
  acct.balance = initial_balance;
  acct.security_deposit = security_deposit;
  m_minted = minted;
  ++m_height;
  return acct;
}

const PublicKey*
Ledger::find_key(const NodeId& node) const
{
  auto it = m_accounts.find(node);
  return it == m_accounts.end() ? nullptr : &it->second.pubkey;
}

Account&
Ledger::mutableAccount(const NodeId& node)
{
  auto it = m_accounts.find(node);
  if (it == m_accounts.end()) {
    throw Error(Errc::Unregistered, node.value);
  }
  return it->second;
}

const Account&
Ledger::account(const NodeId& node) const
{
  return const_cast<Ledger*>(this)->mutableAccount(node);
}

Tokens
Ledger::balance_of(const NodeId& node) const
{
  return account(node).balance;
}

ChannelId
Ledger::open_escrow(const NodeId& a, const NodeId& b, Tokens deposit_a, Tokens deposit_b)
{
  if (a == b) {
    throw Error(Errc::InvalidArgument, "channel needs two distinct parties");
  }
  auto& acctA = mutableAccount(a);
  auto& acctB = mutableAccount(b);
  if (m_pairs.count({a, b}) != 0) {
    throw Error(Errc::DuplicateChannel, a.value + "-" + b.value);
  }
  if (acctA.balance < deposit_a || acctB.balance < deposit_b) {
    throw Error(Errc::InsufficientOnChainFunds, a.value + "-" + b.value);
  }
  acctA.balance -= deposit_a;
  acctB.balance -= deposit_b;

  ChannelId id = m_nextChannel++;
  Escrow& e = m_escrows[id];
  e.id = id;
  e.party_a = a;
  e.party_b = b;
  e.deposit_a = deposit_a;
  e.deposit_b = deposit_b;
  m_pairs[{a, b}] = id;
  ++m_height;
  return id;
}

const Escrow&
Ledger::escrow(ChannelId channel) const
{
  auto it = m_escrows.find(channel);
  if (it == m_escrows.end()) {
    throw Error(Errc::UnknownChannel, std::to_string(channel));
  }
  return it->second;
}

void
Ledger::settle(ChannelId channel, const CommitmentTx& final_tx)
{
  auto& e = const_cast<Escrow&>(escrow(channel));
  if (e.settled) {
    throw Error(Errc::AlreadySettled, std::to_string(channel));
  }
  if (final_tx.channel != channel) {
    throw Error(Errc::InvalidArgument, "commitment belongs to another channel");
  }
  if (!final_tx.fully_signed()) {
    throw Error(Errc::MissingSignature, std::to_string(channel));
  }
  if (!verify_commitment(final_tx, Party::A, account(e.party_a).pubkey) ||
      !verify_commitment(final_tx, Party::B, account(e.party_b).pubkey)) {
    throw Error(Errc::BadSignature, std::to_string(channel));
  }
  if (e.highest_seq && final_tx.seq < *e.highest_seq) {
    throw Error(Errc::StaleSeq, std::to_string(channel));
  }
  e.highest_seq = final_tx.seq;
  if (final_tx.balance_a + final_tx.balance_b != e.total()) {
    throw Error(Errc::NonConserving, std::to_string(channel));
  }

  mutableAccount(e.party_a).balance += final_tx.balance_a;
  mutableAccount(e.party_b).balance += final_tx.balance_b;
  e.settled = true;
  e.final_tx = final_tx;
  ++m_height;
}

Verdict
Ledger::submit_conflict(const TagItem& first, const TagItem& second, const NodeId& submitter)
{
  Verdict v;
  v.advertiser = first.advertiser;

  auto reject = [&](RejectReason why) {
    v.kind = VerdictKind::Rejected;
    v.reason = why;
  };

  if (find_key(first.advertiser) == nullptr || find_key(second.advertiser) == nullptr) {
    reject(RejectReason::Unregistered);
  }
  else if (!verify_item(first, *this) || !verify_item(second, *this)) {
    reject(RejectReason::BadSignature);
  }
  else if (!pricing::detect_conflict(first, second, *this)) {
    reject(RejectReason::NoConflict);
  }
  else if (account(first.advertiser).flagged) {
    reject(RejectReason::AlreadyPunished);
  }
  else {
    auto& acct = mutableAccount(first.advertiser);
    v.kind = VerdictKind::Punished;
    v.burned = acct.security_deposit;
    m_burned += acct.security_deposit;
    acct.security_deposit = Tokens(0);
    acct.flagged = true;
  }

  ++m_height;
  m_disputes.push_back({m_height, submitter, first, second, v});
  return v;
}

Totals
Ledger::totals() const
{
  Totals t;
  t.minted = m_minted;
  t.burned = m_burned;
  for (const auto& [id, acct] : m_accounts) {
    t.balances += acct.balance;
    t.security_deposits += acct.security_deposit;
  }
  for (const auto& [id, e] : m_escrows) {
    if (!e.settled) {
      t.escrow += e.total();
    }
  }
  return t;
}

} // namespace pptp::ledger
