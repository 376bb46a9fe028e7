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
#include <optional>
#include <vector>

namespace pptp::fw {

struct FibEntry
{
  Name prefix;
  std::vector<FaceId> faces;
  std::uint64_t rr_counter = 0;
};

class Fib
{
public:
  /// Adds or replaces the entry for `prefix`. The round-robin counter of a
  /// replaced entry restarts at 0.
  void
  insert(Name prefix, std::vector<FaceId> faces);

  FibEntry*
  longest_match(const Name& name);

  const FibEntry*
  longest_match(const Name& name) const;

  const std::vector<FibEntry>&
  entries() const noexcept
  {
    return m_entries;
  }

private:
  std::vector<FibEntry> m_entries;
};

struct PitEntry
{
  Name name;
  std::uint64_t nonce = 0;
  FaceId in_face;
  Tick created = 0;
  Tick expiry = 0;
};

/// Pending Interest Table keyed by (name, nonce). No aggregation: every
/// nonce gets its own entry.
class Pit
{
public:
  bool
  contains(const Name& name, std::uint64_t nonce) const;

  /// Throws PitDuplicate if the key is already pending.
  void
  insert(PitEntry entry);

  /// Removes and returns the entry, if any.
  std::optional<PitEntry>
  take(const Name& name, std::uint64_t nonce);

  /// Drops every entry whose expiry is <= now; returns how many.
  std::size_t
  expire(Tick now);

  std::size_t
  size() const noexcept
  {
    return m_entries.size();
  }

  bool
  empty() const noexcept
  {
    return m_entries.empty();
  }

private:
  std::map<std::pair<Name, std::uint64_t>, PitEntry> m_entries;
};

} // namespace pptp::fw
