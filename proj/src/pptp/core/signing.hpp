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

namespace pptp {

/// Signature over canonical_encode(item); the item's own signature field is
/// ignored.
Signature
sign_item(const SecretKey& key, const TagItem& item);

/// Returns a copy of `item` with its signature filled in.
TagItem
signed_item(const SecretKey& key, TagItem item);

/// True iff the signature is valid under the advertiser's registered key.
/// Throws Errc::Unregistered when the advertiser has no registered key.
bool
verify_item(const TagItem& item, const IdentityDirectory& directory);

enum class Party : std::uint8_t {
  A,
  B,
};

Signature
sign_commitment(const SecretKey& key, const CommitmentTx& tx);

/// Checks the given party's signature slot; a missing signature is false.
bool
verify_commitment(const CommitmentTx& tx, Party party, const PublicKey& key) noexcept;

} // namespace pptp
