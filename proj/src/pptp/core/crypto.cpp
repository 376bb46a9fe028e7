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

#include "pptp/core/crypto.hpp"

#include <sodium.h>

#include <stdexcept>

namespace pptp {

namespace {

void
ensureSodium()
{
  static const bool ready = [] { return sodium_init() >= 0; }();
  if (!ready) {
    throw std::runtime_error("libsodium initialisation failed");
  }
}

} // namespace

Digest
sha256(std::span<const std::uint8_t> data)
{
  ensureSodium();
  Digest out{};
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

KeyPair
derive_keypair(std::span<const std::uint8_t> material)
{
  ensureSodium();
  static_assert(crypto_sign_SEEDBYTES == 32);
  Digest seed = sha256(material);
  KeyPair kp;
  crypto_sign_seed_keypair(kp.pub.data(), kp.secret.data(), seed.data());
  return kp;
}

KeyPair
derive_keypair(std::uint64_t run_seed, std::string_view node_id)
{
  Bytes material = {'p', 'p', 't', 'p', '-', 'k', 'e', 'y', 0};
  for (int shift = 56; shift >= 0; shift -= 8) {
    material.push_back(static_cast<std::uint8_t>(run_seed >> shift));
  }
  material.insert(material.end(), node_id.begin(), node_id.end());
  return derive_keypair(material);
}

Signature
sign_bytes(const SecretKey& key, std::span<const std::uint8_t> message)
{
  ensureSodium();
  Signature sig{};
  crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), key.data());
  return sig;
}

bool
verify_bytes(const PublicKey& key, std::span<const std::uint8_t> message, const Signature& sig) noexcept
{
  if (sodium_init() < 0) {
    return false;
  }
  return crypto_sign_verify_detached(sig.data(), message.data(), message.size(), key.data()) == 0;
}

} // namespace pptp
