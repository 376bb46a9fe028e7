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

#include "pptp/core/types.hpp"

namespace pptp {

Name::Name(std::vector<std::string> components)
  : m_components(std::move(components))
{
  if (m_components.empty()) {
    throw Error(Errc::InvalidArgument, "name needs at least one component");
  }
  for (const auto& c : m_components) {
    if (c.empty()) {
      throw Error(Errc::InvalidArgument, "empty name component");
    }
  }
}

Name
Name::parse(std::string_view uri)
{
  if (uri.empty() || uri.front() != '/') {
    throw Error(Errc::InvalidArgument, "name must start with '/': " + std::string(uri));
  }
  std::vector<std::string> parts;
  std::size_t pos = 1;
  while (pos <= uri.size()) {
    auto next = uri.find('/', pos);
    if (next == std::string_view::npos) {
      next = uri.size();
    }
    parts.emplace_back(uri.substr(pos, next - pos));
    pos = next + 1;
  }
  return Name(std::move(parts));
}

bool
Name::is_prefix_of(const Name& other) const noexcept
{
  if (m_components.size() > other.m_components.size()) {
    return false;
  }
  return std::equal(m_components.begin(), m_components.end(), other.m_components.begin());
}

Name
Name::append(std::string component) const
{
  auto parts = m_components;
  parts.push_back(std::move(component));
  return Name(std::move(parts));
}

std::string
Name::to_uri() const
{
  std::string out;
  for (const auto& c : m_components) {
    out += '/';
    out += c;
  }
  return out.empty() ? "/" : out;
}

TagItem
PathTag::pop()
{
  if (m_items.empty()) {
    throw Error(Errc::MalformedPacket, "pop on empty path tag");
  }
  TagItem item = std::move(m_items.back());
  m_items.pop_back();
  return item;
}

const TagItem&
PathTag::top() const
{
  if (m_items.empty()) {
    throw Error(Errc::MalformedPacket, "top of empty path tag");
  }
  return m_items.back();
}

} // namespace pptp
