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

#include "pptp/forwarding/tables.hpp"

namespace pptp::fw {

void
Fib::insert(Name prefix, std::vector<FaceId> faces)
{
  if (faces.empty()) {
    throw Error(Errc::InvalidArgument, "FIB entry needs at least one face");
  }
  for (auto& e : m_entries) {
    if (e.prefix == prefix) {
      e.faces = std::move(faces);
      e.rr_counter = 0;
      return;
    }
  }
  m_entries.push_back({std::move(prefix), std::move(faces), 0});
}

FibEntry*
Fib::longest_match(const Name& name)
{
  FibEntry* best = nullptr;
  for (auto& e : m_entries) {
    if (e.prefix.is_prefix_of(name) && (best == nullptr || e.prefix.size() > best->prefix.size())) {
      best = &e;
    }
  }
  return best;
}

const FibEntry*
Fib::longest_match(const Name& name) const
{
  return const_cast<Fib*>(this)->longest_match(name);
}

bool
Pit::contains(const Name& name, std::uint64_t nonce) const
{
  return m_entries.count({name, nonce}) != 0;
}

void
Pit::insert(PitEntry entry)
{
  auto key = std::make_pair(entry.name, entry.nonce);
  if (!m_entries.emplace(std::move(key), std::move(entry)).second) {
    throw Error(Errc::PitDuplicate);
  }
}

std::optional<PitEntry>
Pit::take(const Name& name, std::uint64_t nonce)
{
  auto it = m_entries.find({name, nonce});
  if (it == m_entries.end()) {
    return std::nullopt;
  }
  PitEntry e = std::move(it->second);
  m_entries.erase(it);
  return e;
}

std::size_t
Pit::expire(Tick now)
{
  return std::erase_if(m_entries, [now](const auto& kv) { return kv.second.expiry <= now; });
}

} // namespace pptp::fw
