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

#include <atomic>
#include <chrono>
#include <cstdint>

namespace xdac {

/// Logical time source, milliseconds. Injectable so that block cutting,
/// policy expiry and replay windows are deterministic under test.
class Clock {
public:
    virtual ~Clock() = default;
    virtual uint64_t now_ms() = 0;
};

class ManualClock : public Clock {
public:
    explicit ManualClock(uint64_t start_ms = 0) : now_(start_ms) {}
    uint64_t now_ms() override { return now_.load(std::memory_order_relaxed); }
    void advance_ms(uint64_t delta) { now_.fetch_add(delta, std::memory_order_relaxed); }
    void set_ms(uint64_t t) { now_.store(t, std::memory_order_relaxed); }

private:
    std::atomic<uint64_t> now_;
};

class SystemClock : public Clock {
public:
    uint64_t now_ms() override {
        using namespace std::chrono;
        return static_cast<uint64_t>(
            duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count());
    }
};

}  // namespace xdac
