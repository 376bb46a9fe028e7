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

#include <span>

namespace pptp {

// Wire layout (all integers big-endian, see docs/wire-format.md):
//
//   TagItem core   : 'T' ver:u8 adv_len:u16 adv[adv_len] face:u32 price:u64
//                    not_before:u64 not_after:u64 bandwidth:u64 latency:u64
//   TagItem        : core sig_len:u16 sig[64]
//   PathTag        : 'P' ver:u8 count:u16 { item_len:u32 item[item_len] }*
//                    (items bottom to top)
//   Commitment core: 'C' ver:u8 channel:u64 seq:u64 balance_a:u64 balance_b:u64
//   Commitment     : core flags:u8 [sig_a[64]] [sig_b[64]]

inline constexpr std::uint8_t kWireVersion = 1;

Bytes
canonical_encode(const TagItem& item);

Bytes
encode(const TagItem& item);

TagItem
decode_tag_item(std::span<const std::uint8_t> bytes);

Bytes
encode(const PathTag& tag);

PathTag
decode_path_tag(std::span<const std::uint8_t> bytes);

Bytes
canonical_encode(const CommitmentTx& tx);

Bytes
encode(const CommitmentTx& tx);

CommitmentTx
decode_commitment(std::span<const std::uint8_t> bytes);

std::string
to_hex(std::span<const std::uint8_t> bytes);

} // namespace pptp
