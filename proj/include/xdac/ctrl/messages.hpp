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

#include <string>
#include <variant>

#include "xdac/common/crypto.hpp"
#include "xdac/common/result.hpp"

namespace xdac::ctrl {

// Frame layout (docs/wire.md), all integers big-endian:
//   offset 0  version (1B)
//   offset 1  type    (1B)   1 = Map Request, 2 = Map Reply
//   offset 2  nonce   (8B)
//   offset 10 src-eid (4B)
//   offset 14 dst-eid (4B)
//   type 1 trailer: u16 user-ref length, user-ref bytes, 64B signature
//   type 2 trailer: u16 payload length, sealed payload bytes
// The request signature covers every byte that precedes it.

constexpr uint8_t kWireVersion = 1;
constexpr uint8_t kTypeMapRequest = 1;
constexpr uint8_t kTypeMapReply = 2;
constexpr size_t kFixedHeaderSize = 18;

struct MapRequest {
    uint8_t version = kWireVersion;
    uint64_t nonce = 0;
    uint32_t src_eid = 0;
    uint32_t dst_eid = 0;
    std::string user_ref;
    crypto::Signature signature{};

    bool operator==(const MapRequest&) const = default;
};

struct MapReply {
    uint8_t version = kWireVersion;
    uint64_t nonce = 0;
    uint32_t src_eid = 0;
    uint32_t dst_eid = 0;
    Bytes sealed_payload;  // security association, sealed to the requester

    bool operator==(const MapReply&) const = default;
};

using Message = std::variant<MapRequest, MapReply>;

enum class CodecErrorCode : uint8_t { MalformedFrame, UnknownType, BadVersion };

struct CodecError {
    CodecErrorCode code;
    std::string detail;
};

const char* codec_error_name(CodecErrorCode c);

Bytes encode_message(const MapRequest& msg);
Bytes encode_message(const MapReply& msg);

/// Strict decoder: rejects truncated and over-long frames. Bijective with
/// the encoders on valid messages.
Result<Message, CodecError> decode_message(const Bytes& frame);

/// The bytes a Map Request signature covers.
Bytes request_signing_bytes(const MapRequest& msg);

MapRequest make_signed_request(uint64_t nonce, uint32_t src_eid, uint32_t dst_eid,
                               const std::string& user_ref, const crypto::SecretKey& user_sk);

bool verify_request_signature(const MapRequest& msg, const crypto::PublicKey& user_pk);

}  // namespace xdac::ctrl
