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

#include "xdac/common/crypto.hpp"

#include <sodium.h>

#include <stdexcept>

namespace xdac::crypto {

void init() {
    static const int rc = sodium_init();
    if (rc < 0) throw std::runtime_error("libsodium initialization failed");
}

Digest sha256(const uint8_t* data, size_t len) {
    init();
    Digest d{};
    crypto_hash_sha256(d.data(), data, len);
    return d;
}

KeyPair generate_keypair() {
    init();
    KeyPair kp;
    crypto_sign_keypair(kp.pk.data(), kp.sk.data());
    return kp;
}

KeyPair keypair_from_seed(const Seed& seed) {
    init();
    KeyPair kp;
    crypto_sign_seed_keypair(kp.pk.data(), kp.sk.data(), seed.data());
    return kp;
}

bool valid_public_key(const PublicKey& pk) {
    init();
    return crypto_core_ed25519_is_valid_point(pk.data()) == 1;
}

Signature sign(const SecretKey& sk, const Bytes& msg) {
    return sign_digest(sk, sha256(msg));
}

Signature sign_digest(const SecretKey& sk, const Digest& d) {
    init();
    Signature sig{};
    crypto_sign_detached(sig.data(), nullptr, d.data(), d.size(), sk.data());
    return sig;
}

bool verify(const PublicKey& pk, const Bytes& msg, const Signature& sig) {
    return verify_digest(pk, sha256(msg), sig);
}

bool verify_digest(const PublicKey& pk, const Digest& d, const Signature& sig) {
    init();
    return crypto_sign_verify_detached(sig.data(), d.data(), d.size(), pk.data()) == 0;
}

std::optional<Bytes> seal(const PublicKey& recipient_ed_pk, const Bytes& plaintext) {
    init();
    unsigned char x_pk[crypto_box_PUBLICKEYBYTES];
    if (crypto_sign_ed25519_pk_to_curve25519(x_pk, recipient_ed_pk.data()) != 0)
        return std::nullopt;
    Bytes out(plaintext.size() + crypto_box_SEALBYTES);
    if (crypto_box_seal(out.data(), plaintext.data(), plaintext.size(), x_pk) != 0)
        return std::nullopt;
    return out;
}

std::optional<Bytes> unseal(const PublicKey& ed_pk, const SecretKey& ed_sk, const Bytes& sealed) {
    init();
    if (sealed.size() < crypto_box_SEALBYTES) return std::nullopt;
    unsigned char x_pk[crypto_box_PUBLICKEYBYTES];
    unsigned char x_sk[crypto_box_SECRETKEYBYTES];
    if (crypto_sign_ed25519_pk_to_curve25519(x_pk, ed_pk.data()) != 0) return std::nullopt;
    if (crypto_sign_ed25519_sk_to_curve25519(x_sk, ed_sk.data()) != 0) return std::nullopt;
    Bytes out(sealed.size() - crypto_box_SEALBYTES);
    if (crypto_box_seal_open(out.data(), sealed.data(), sealed.size(), x_pk, x_sk) != 0)
        return std::nullopt;
    return out;
}

void random_bytes(uint8_t* out, size_t len) {
    init();
    randombytes_buf(out, len);
}

uint64_t random_u64() {
    uint64_t v;
    random_bytes(reinterpret_cast<uint8_t*>(&v), sizeof(v));
    return v;
}

}  // namespace xdac::crypto
