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

#include <cstdint>
#include <optional>
#include <string>

namespace xdac::ctrl {

/// 32-bit endpoint address with IPv4 semantics, naming a user source or a
/// resource destination. Zero is not a valid endpoint.
class EndpointId {
public:
    static std::optional<EndpointId> from_value(uint32_t v) {
        if (v == 0) return std::nullopt;
        return EndpointId(v);
    }

    /// Parses dotted-quad form; str() round-trips.
    static std::optional<EndpointId> from_string(const std::string& dotted);

    uint32_t value() const { return v_; }
    std::string str() const;

    bool operator==(const EndpointId&) const = default;
    auto operator<=>(const EndpointId&) const = default;

private:
    explicit EndpointId(uint32_t v) : v_(v) {}
    uint32_t v_;
};

}  // namespace xdac::ctrl
