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

#include "pptp/pricing/price_book.hpp"
#include "pptp/core/signing.hpp"

namespace pptp::pricing {

PriceBook::PriceBook(NodeId owner, SecretKey key)
  : m_owner(std::move(owner))
  , m_key(key)
{
}

void
PriceBook::set_price(FaceId face, Tokens price, Window window, PerfMetric metric)
{
  if (!window.valid()) {
    throw Error(Errc::InvalidArgument, "window not_before > not_after");
  }
  auto clashes = [&](FaceId f, Tokens p, const Window& w) {
    return f == face && p != price && overlap(w, window);
  };
  for (const auto& e : m_schedule) {
    if (clashes(e.face, e.price, e.window)) {
      throw Error(Errc::EquivocationRefused, "overlaps a scheduled price on the same face");
    }
  }
  for (const auto& item : m_log) {
    if (clashes(item.face, item.price, item.window)) {
      throw Error(Errc::EquivocationRefused, "overlaps an issued advertisement on the same face");
    }
  }
  m_schedule.push_back({face, price, window, metric});
}

std::optional<PriceEntry>
PriceBook::active_entry(FaceId face, Tick now) const
{
  for (const auto& e : m_schedule) {
    if (e.face == face && e.window.contains(now)) {
      return e;
    }
  }
  return std::nullopt;
}

TagItem
PriceBook::advertise(FaceId face, Tick now)
{
  auto entry = active_entry(face, now);
  if (!entry) {
    throw Error(Errc::NoActivePrice, m_owner.value);
  }
  return issue(*entry);
}

TagItem
PriceBook::equivocate_for_test(FaceId face, Tokens price, Window window, PerfMetric metric)
{
  if (!m_faultInjection) {
    throw Error(Errc::NotFaultMode);
  }
  return issue({face, price, window, metric});
}

TagItem
PriceBook::issue(const PriceEntry& entry)
{
  TagItem item;
  item.advertiser = m_owner;
  item.face = entry.face;
  item.price = entry.price;
  item.window = entry.window;
  item.metric = entry.metric;
  item = signed_item(m_key, std::move(item));
  m_log.push_back(item);
  return item;
}

bool
terms_conflict(const TagItem& a, const TagItem& b) noexcept
{
  return a.advertiser == b.advertiser && a.face == b.face && overlap(a.window, b.window) &&
         a.price != b.price;
}

bool
detect_conflict(const TagItem& a, const TagItem& b, const IdentityDirectory& directory)
{
  if (!terms_conflict(a, b)) {
    return false;
  }
  try {
    return verify_item(a, directory) && verify_item(b, directory);
  }
  catch (const Error&) {
    return false;
  }
}

} // namespace pptp::pricing
