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

#include <optional>
#include <vector>

namespace pptp::pricing {

struct PriceEntry
{
  FaceId face;
  Tokens price;
  Window window;
  PerfMetric metric;
};

/// Per-node price schedule plus the append-only log of every advertisement
/// the node has signed. The log is the evidence base for disputes.
///
/// The honest path (set_price / advertise) never signs two items for the same
/// face whose windows overlap with different prices. equivocate_for_test is
/// the only way around that, and only while fault injection is enabled.
class PriceBook
{
public:
  PriceBook(NodeId owner, SecretKey key);

  /// Throws EquivocationRefused if the entry would contradict an existing
  /// schedule entry or an already issued advertisement for the same face.
  void
  set_price(FaceId face, Tokens price, Window window, PerfMetric metric = {});

  /// Signs and logs an item for the first scheduled entry covering `now`.
  /// Throws NoActivePrice when no entry covers `now`.
  TagItem
  advertise(FaceId face, Tick now);

  std::optional<PriceEntry>
  active_entry(FaceId face, Tick now) const;

  void
  set_fault_injection(bool enabled) noexcept
  {
    m_faultInjection = enabled;
  }

  bool
  fault_injection() const noexcept
  {
    return m_faultInjection;
  }

  /// Signs an arbitrary advertisement, bypassing the conflict check.
  /// Throws NotFaultMode unless fault injection is enabled.
  TagItem
  equivocate_for_test(FaceId face, Tokens price, Window window, PerfMetric metric = {});

  const NodeId&
  owner() const noexcept
  {
    return m_owner;
  }

  const std::vector<PriceEntry>&
  schedule() const noexcept
  {
    return m_schedule;
  }

  const std::vector<TagItem>&
  log() const noexcept
  {
    return m_log;
  }

private:
  TagItem
  issue(const PriceEntry& entry);

  NodeId m_owner;
  SecretKey m_key;
  std::vector<PriceEntry> m_schedule;
  std::vector<TagItem> m_log;
  bool m_faultInjection = false;
};

/// The equivocation predicate on advertised terms alone: same advertiser,
/// same face, overlapping windows, different prices. Metrics are ignored.
bool
terms_conflict(const TagItem& a, const TagItem& b) noexcept;

/// terms_conflict plus valid signatures on both items. Invalid or unverifiable
/// (unregistered) items make the result false.
bool
detect_conflict(const TagItem& a, const TagItem& b, const IdentityDirectory& directory);

} // namespace pptp::pricing
