/* Copyright 2026 The xdac Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
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
#include <optional>
#include <string>

#include "xdac/common/bytes.hpp"

namespace xdac::crypto {

// Ed25519 signatures (deterministic, 64 bytes) over SHA-256 digests,
// X25519 sealed boxes for the security-association payload.

constexpr size_t kDigestSize = 32;
constexpr size_t kPublicKeySize = 32;
constexpr size_t kSecretKeySize = 64;
constexpr size_t kSeedSize = 32;
constexpr size_t kSignatureSize = 64;
constexpr size_t kSealOverhead = 48;

using Digest = std::array<uint8_t, kDigestSize>;
using PublicKey = std::array<uint8_t, kPublicKeySize>;
using SecretKey = std::array<uint8_t, kSecretKeySize>;
using Seed = std::array<uint8_t, kSeedSize>;
using Signature = std::array<uint8_t, kSignatureSize>;

struct KeyPair {
    PublicKey pk{};
    SecretKey sk{};
};

/// Idempotent library init; called lazily by every entry point below.
void init();

Digest sha256(const uint8_t* data, size_t len);
inline Digest sha256(const Bytes& b) { return sha256(b.data(), b.size()); }

KeyPair generate_keypair();
KeyPair keypair_from_seed(const Seed& seed);

/// True if the 32 bytes are a canonical, valid Ed25519 public key.
bool valid_public_key(const PublicKey& pk);

/// Signs the SHA-256 digest of `msg`. 64-byte deterministic signature.
Signature sign(const SecretKey& sk, const Bytes& msg);
Signature sign_digest(const SecretKey& sk, const Digest& d);

bool verify(const PublicKey& pk, const Bytes& msg, const Signature& sig);
bool verify_digest(const PublicKey& pk, const Digest& d, const Signature& sig);

/// Anonymous public-key encryption to an Ed25519 identity (the key is
/// converted to X25519 internally). Output is plaintext + 48 bytes.
std::optional<Bytes> seal(const PublicKey& recipient_ed_pk, const Bytes& plaintext);
std::optional<Bytes> unseal(const PublicKey& ed_pk, const SecretKey& ed_sk, const Bytes& sealed);

void random_bytes(uint8_t* out, size_t len);
uint64_t random_u64();

}  // namespace xdac::crypto
