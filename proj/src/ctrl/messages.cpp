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

#include "xdac/ctrl/messages.hpp"

#include "xdac/common/wire.hpp"

namespace xdac::ctrl {

const char* codec_error_name(CodecErrorCode c) {
    switch (c) {
        case CodecErrorCode::MalformedFrame: return "MalformedFrame";
        case CodecErrorCode::UnknownType: return "UnknownType";
        case CodecErrorCode::BadVersion: return "BadVersion";
    }
    return "?";
}

namespace {

void put_header(wire::Writer& w, uint8_t version, uint8_t type, uint64_t nonce, uint32_t src,
                uint32_t dst) {
    w.u8(version);
    w.u8(type);
    w.u64(nonce);
    w.u32(src);
    w.u32(dst);
}

CodecError malformed(std::string detail) {
    return CodecError{CodecErrorCode::MalformedFrame, std::move(detail)};
}

}  // namespace

Bytes request_signing_bytes(const MapRequest& msg) {
    wire::Writer w;
    put_header(w, msg.version, kTypeMapRequest, msg.nonce, msg.src_eid, msg.dst_eid);
    w.u16(static_cast<uint16_t>(msg.user_ref.size()));
    w.raw(reinterpret_cast<const uint8_t*>(msg.user_ref.data()), msg.user_ref.size());
    return w.take();
}

Bytes encode_message(const MapRequest& msg) {
    Bytes out = request_signing_bytes(msg);
    out.insert(out.end(), msg.signature.begin(), msg.signature.end());
    return out;
}

Bytes encode_message(const MapReply& msg) {
    wire::Writer w;
    put_header(w, msg.version, kTypeMapReply, msg.nonce, msg.src_eid, msg.dst_eid);
    w.u16(static_cast<uint16_t>(msg.sealed_payload.size()));
    w.raw(msg.sealed_payload);
    return w.take();
}

Result<Message, CodecError> decode_message(const Bytes& frame) {
    if (frame.size() < 2) return malformed("frame shorter than 2 bytes");
    uint8_t version = frame[0];
    uint8_t type = frame[1];
    if (version != kWireVersion)
        return CodecError{CodecErrorCode::BadVersion,
                          "version " + std::to_string(version)};
    if (type != kTypeMapRequest && type != kTypeMapReply)
        return CodecError{CodecErrorCode::UnknownType, "type " + std::to_string(type)};
    if (frame.size() < kFixedHeaderSize + 2) return malformed("truncated header");

    wire::Reader r(frame);
    r.u8();  // version
    r.u8();  // type
    uint64_t nonce = r.u64();
    uint32_t src = r.u32();
    uint32_t dst = r.u32();
    uint16_t len = r.u16();

    if (type == kTypeMapRequest) {
        if (r.remaining() != len + crypto::kSignatureSize)
            return malformed("request length mismatch");
        MapRequest msg;
        msg.version = version;
        msg.nonce = nonce;
        msg.src_eid = src;
        msg.dst_eid = dst;
        msg.user_ref.assign(reinterpret_cast<const char*>(frame.data() + r.pos()), len);
        wire::Reader sig_r(frame.data() + r.pos() + len, crypto::kSignatureSize);
        msg.signature = sig_r.fixed<crypto::kSignatureSize>();
        return Message{std::move(msg)};
    }

    if (r.remaining() != len) return malformed("reply length mismatch");
    MapReply msg;
    msg.version = version;
    msg.nonce = nonce;
    msg.src_eid = src;
    msg.dst_eid = dst;
    msg.sealed_payload.assign(frame.begin() + static_cast<long>(r.pos()), frame.end());
    return Message{std::move(msg)};
}

MapRequest make_signed_request(uint64_t nonce, uint32_t src_eid, uint32_t dst_eid,
                               const std::string& user_ref, const crypto::SecretKey& user_sk) {
    MapRequest msg;
    msg.nonce = nonce;
    msg.src_eid = src_eid;
    msg.dst_eid = dst_eid;
    msg.user_ref = user_ref;
    msg.signature = crypto::sign(user_sk, request_signing_bytes(msg));
    return msg;
}

bool verify_request_signature(const MapRequest& msg, const crypto::PublicKey& user_pk) {
    return crypto::verify(user_pk, request_signing_bytes(msg), msg.signature);
}

}  // namespace xdac::ctrl
