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

#include "pptp/core/encoding.hpp"

#include <limits>

namespace pptp {

namespace {

constexpr std::uint8_t kTagItemType = 'T';
constexpr std::uint8_t kPathTagType = 'P';
constexpr std::uint8_t kCommitmentType = 'C';

class Writer
{
public:
  explicit Writer(Bytes& out)
    : m_out(out)
  {
  }

  template<typename T>
  void
  uint(T v)
  {
    for (int shift = (sizeof(T) - 1) * 8; shift >= 0; shift -= 8) {
      m_out.push_back(static_cast<std::uint8_t>(v >> shift));
    }
  }

  void
  raw(std::span<const std::uint8_t> bytes)
  {
    m_out.insert(m_out.end(), bytes.begin(), bytes.end());
  }

private:
  Bytes& m_out;
};

class Reader
{
public:
  explicit Reader(std::span<const std::uint8_t> in)
    : m_in(in)
  {
  }

  template<typename T>
  T
  uint()
  {
    need(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v = static_cast<T>((v << 8) | m_in[m_pos++]);
    }
    return v;
  }

  std::span<const std::uint8_t>
  raw(std::size_t n)
  {
    need(n);
    auto s = m_in.subspan(m_pos, n);
    m_pos += n;
    return s;
  }

  void
  expect(std::uint8_t type)
  {
    if (uint<std::uint8_t>() != type) {
      throw Error(Errc::DecodeError, "unexpected type byte");
    }
    if (uint<std::uint8_t>() != kWireVersion) {
      throw Error(Errc::DecodeError, "unsupported wire version");
    }
  }

  void
  finish() const
  {
    if (m_pos != m_in.size()) {
      throw Error(Errc::DecodeError, "trailing bytes");
    }
  }

private:
  void
  need(std::size_t n) const
  {
    if (m_in.size() - m_pos < n) {
      throw Error(Errc::DecodeError, "truncated input");
    }
  }

  std::span<const std::uint8_t> m_in;
  std::size_t m_pos = 0;
};

void
writeItemCore(Writer& w, const TagItem& item)
{
  const auto& adv = item.advertiser.value;
  if (adv.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(Errc::InvalidArgument, "advertiser id too long");
  }
  w.uint<std::uint8_t>(kTagItemType);
  w.uint<std::uint8_t>(kWireVersion);
  w.uint<std::uint16_t>(static_cast<std::uint16_t>(adv.size()));
  w.raw({reinterpret_cast<const std::uint8_t*>(adv.data()), adv.size()});
  w.uint<std::uint32_t>(item.face.value);
  w.uint<std::uint64_t>(item.price.value());
  w.uint<std::uint64_t>(item.window.not_before);
  w.uint<std::uint64_t>(item.window.not_after);
  w.uint<std::uint64_t>(item.metric.adv_bandwidth);
  w.uint<std::uint64_t>(item.metric.adv_latency);
}

TagItem
readItem(Reader& r)
{
  TagItem item;
  r.expect(kTagItemType);
  auto advLen = r.uint<std::uint16_t>();
  auto adv = r.raw(advLen);
  item.advertiser.value.assign(adv.begin(), adv.end());
  item.face.value = r.uint<std::uint32_t>();
  item.price = Tokens(r.uint<std::uint64_t>());
  item.window.not_before = r.uint<std::uint64_t>();
  item.window.not_after = r.uint<std::uint64_t>();
  item.metric.adv_bandwidth = r.uint<std::uint64_t>();
  item.metric.adv_latency = r.uint<std::uint64_t>();
  if (r.uint<std::uint16_t>() != item.signature.size()) {
    throw Error(Errc::DecodeError, "bad signature length");
  }
  auto sig = r.raw(item.signature.size());
  std::copy(sig.begin(), sig.end(), item.signature.begin());
  return item;
}

void
writeCommitmentCore(Writer& w, const CommitmentTx& tx)
{
  w.uint<std::uint8_t>(kCommitmentType);
  w.uint<std::uint8_t>(kWireVersion);
  w.uint<std::uint64_t>(tx.channel);
  w.uint<std::uint64_t>(tx.seq);
  w.uint<std::uint64_t>(tx.balance_a.value());
  w.uint<std::uint64_t>(tx.balance_b.value());
}

} // namespace

Bytes
canonical_encode(const TagItem& item)
{
  Bytes out;
  Writer w(out);
  writeItemCore(w, item);
  return out;
}

Bytes
encode(const TagItem& item)
{
  Bytes out;
  Writer w(out);
  writeItemCore(w, item);
  w.uint<std::uint16_t>(static_cast<std::uint16_t>(item.signature.size()));
  w.raw(item.signature);
  return out;
}

TagItem
decode_tag_item(std::span<const std::uint8_t> bytes)
{
  Reader r(bytes);
  TagItem item = readItem(r);
  r.finish();
  return item;
}

Bytes
encode(const PathTag& tag)
{
  if (tag.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(Errc::InvalidArgument, "path tag too long");
  }
  Bytes out;
  Writer w(out);
  w.uint<std::uint8_t>(kPathTagType);
  w.uint<std::uint8_t>(kWireVersion);
  w.uint<std::uint16_t>(static_cast<std::uint16_t>(tag.size()));
  for (const auto& item : tag.items()) {
    Bytes one = encode(item);
    w.uint<std::uint32_t>(static_cast<std::uint32_t>(one.size()));
    w.raw(one);
  }
  return out;
}

PathTag
decode_path_tag(std::span<const std::uint8_t> bytes)
{
  Reader r(bytes);
  r.expect(kPathTagType);
  auto count = r.uint<std::uint16_t>();
  PathTag tag;
  for (std::uint16_t i = 0; i < count; ++i) {
    auto len = r.uint<std::uint32_t>();
    tag.push(decode_tag_item(r.raw(len)));
  }
  r.finish();
  return tag;
}

Bytes
canonical_encode(const CommitmentTx& tx)
{
  Bytes out;
  Writer w(out);
  writeCommitmentCore(w, tx);
  return out;
}

Bytes
encode(const CommitmentTx& tx)
{
  Bytes out;
  Writer w(out);
  writeCommitmentCore(w, tx);
  std::uint8_t flags = (tx.sig_a ? 0x01 : 0x00) | (tx.sig_b ? 0x02 : 0x00);
  w.uint<std::uint8_t>(flags);
  if (tx.sig_a) {
    w.raw(*tx.sig_a);
  }
  if (tx.sig_b) {
    w.raw(*tx.sig_b);
  }
  return out;
}

CommitmentTx
decode_commitment(std::span<const std::uint8_t> bytes)
{
  Reader r(bytes);
  r.expect(kCommitmentType);
  CommitmentTx tx;
  tx.channel = r.uint<std::uint64_t>();
  tx.seq = r.uint<std::uint64_t>();
  tx.balance_a = Tokens(r.uint<std::uint64_t>());
  tx.balance_b = Tokens(r.uint<std::uint64_t>());
  auto flags = r.uint<std::uint8_t>();
  if (flags & ~0x03) {
    throw Error(Errc::DecodeError, "unknown commitment flags");
  }
  auto readSig = [&r] {
    Signature sig{};
    auto s = r.raw(sig.size());
    std::copy(s.begin(), s.end(), sig.begin());
    return sig;
  };
  if (flags & 0x01) {
    tx.sig_a = readSig();
  }
  if (flags & 0x02) {
    tx.sig_b = readSig();
  }
  r.finish();
  return tx;
}

std::string
to_hex(std::span<const std::uint8_t> bytes)
{
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

} // namespace pptp
