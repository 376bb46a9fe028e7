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

#include "pptp/core/signing.hpp"
#include "pptp/core/encoding.hpp"

namespace pptp {

Signature
sign_item(const SecretKey& key, const TagItem& item)
{
  return sign_bytes(key, canonical_encode(item));
}

TagItem
signed_item(const SecretKey& key, TagItem item)
{
  item.signature = sign_item(key, item);
  return item;
}

bool
verify_item(const TagItem& item, const IdentityDirectory& directory)
{
  const PublicKey* key = directory.find_key(item.advertiser);
  if (key == nullptr) {
    throw Error(Errc::Unregistered, item.advertiser.value);
  }
  return verify_bytes(*key, canonical_encode(item), item.signature);
}

Signature
sign_commitment(const SecretKey& key, const CommitmentTx& tx)
{
  return sign_bytes(key, canonical_encode(tx));
}

bool
verify_commitment(const CommitmentTx& tx, Party party, const PublicKey& key) noexcept
{
  const auto& sig = party == Party::A ? tx.sig_a : tx.sig_b;
  if (!sig) {
    return false;
  }
  try {
    return verify_bytes(key, canonical_encode(tx), *sig);
  }
  catch (...) {
    return false;
  }
}

} // namespace pptp
