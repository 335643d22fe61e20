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
#include <cstring>
#include <string>

#include "xdac/common/bytes.hpp"

namespace xdac::wire {

/// Canonical serialization primitives: big-endian integers, u32
/// length-prefixed strings/byte blobs, fixed order decided by the caller.
/// Every persistent or hashed structure in the system goes through these
/// so that a given logical value has exactly one byte representation.
class Writer {
public:
    void u8(uint8_t v) { buf_.push_back(v); }

    void u16(uint16_t v) {
        buf_.push_back(static_cast<uint8_t>(v >> 8));
        buf_.push_back(static_cast<uint8_t>(v));
    }

    void u32(uint32_t v) {
        for (int shift = 24; shift >= 0; shift -= 8)
            buf_.push_back(static_cast<uint8_t>(v >> shift));
    }

    void u64(uint64_t v) {
        for (int shift = 56; shift >= 0; shift -= 8)
            buf_.push_back(static_cast<uint8_t>(v >> shift));
    }

    void raw(const uint8_t* data, size_t len) { buf_.insert(buf_.end(), data, data + len); }

    void raw(const Bytes& b) { raw(b.data(), b.size()); }

    template <size_t N>
    void fixed(const std::array<uint8_t, N>& a) {
        raw(a.data(), N);
    }

    void blob(const Bytes& b) {
        u32(static_cast<uint32_t>(b.size()));
        raw(b);
    }

    void str(const std::string& s) {
        u32(static_cast<uint32_t>(s.size()));
        buf_.insert(buf_.end(), s.begin(), s.end());
    }

    const Bytes& bytes() const { return buf_; }
    Bytes take() { return std::move(buf_); }
    size_t size() const { return buf_.size(); }

private:
    Bytes buf_;
};

/// Bounds-checked reader over a byte span. All accessors set the failed
/// flag instead of reading out of range; callers check ok() once at the end.
class Reader {
public:
    Reader(const uint8_t* data, size_t len) : data_(data), len_(len) {}
    explicit Reader(const Bytes& b) : Reader(b.data(), b.size()) {}

    uint8_t u8() {
        if (!need(1)) return 0;
        return data_[pos_++];
    }

    uint16_t u16() {
        if (!need(2)) return 0;
        uint16_t v = static_cast<uint16_t>((data_[pos_] << 8) | data_[pos_ + 1]);
        pos_ += 2;
        return v;
    }

    uint32_t u32() {
        if (!need(4)) return 0;
        uint32_t v = 0;
        for (int i = 0; i < 4; i++) v = (v << 8) | data_[pos_ + i];
        pos_ += 4;
        return v;
    }

    uint64_t u64() {
        if (!need(8)) return 0;
        uint64_t v = 0;
        for (int i = 0; i < 8; i++) v = (v << 8) | data_[pos_ + i];
        pos_ += 8;
        return v;
    }

    Bytes blob() {
        uint32_t n = u32();
        if (!need(n)) return {};
        Bytes out(data_ + pos_, data_ + pos_ + n);
        pos_ += n;
        return out;
    }

    std::string str() {
        uint32_t n = u32();
        if (!need(n)) return {};
        std::string out(reinterpret_cast<const char*>(data_ + pos_), n);
        pos_ += n;
        return out;
    }

    template <size_t N>
    std::array<uint8_t, N> fixed() {
        std::array<uint8_t, N> out{};
        if (!need(N)) return out;
        std::memcpy(out.data(), data_ + pos_, N);
        pos_ += N;
        return out;
    }

    bool ok() const { return !failed_; }
    bool at_end() const { return pos_ == len_; }
    size_t remaining() const { return len_ - pos_; }
    size_t pos() const { return pos_; }

private:
    bool need(size_t n) {
        if (failed_ || len_ - pos_ < n) {
            failed_ = true;
            return false;
        }
        return true;
    }

    const uint8_t* data_;
    size_t len_;
    size_t pos_ = 0;
    bool failed_ = false;
};

}  // namespace xdac::wire
