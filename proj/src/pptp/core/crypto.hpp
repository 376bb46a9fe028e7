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

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pptp {

using Bytes = std::vector<std::uint8_t>;

// Ed25519 (libsodium). Signing is deterministic, so identical inputs always
// yield identical signatures and simulation output stays reproducible.
using PublicKey = std::array<std::uint8_t, 32>;
using SecretKey = std::array<std::uint8_t, 64>;
using Signature = std::array<std::uint8_t, 64>;
using Digest = std::array<std::uint8_t, 32>;

struct KeyPair
{
  PublicKey pub{};
  SecretKey secret{};
};

/// Derives a key pair from arbitrary seed material (hashed to a 32-byte seed).
KeyPair
derive_keypair(std::span<const std::uint8_t> material);

KeyPair
derive_keypair(std::uint64_t run_seed, std::string_view node_id);

Signature
sign_bytes(const SecretKey& key, std::span<const std::uint8_t> message);

bool
verify_bytes(const PublicKey& key, std::span<const std::uint8_t> message, const Signature& sig) noexcept;

Digest
sha256(std::span<const std::uint8_t> data);

} // namespace pptp
