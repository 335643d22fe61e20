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

#include "xdac/ctrl/eid.hpp"

#include <sstream>

namespace xdac::ctrl {

std::optional<EndpointId> EndpointId::from_string(const std::string& dotted) {
    uint32_t parts[4];
    size_t idx = 0, start = 0;
    for (size_t i = 0; i <= dotted.size(); i++) {
        if (i == dotted.size() || dotted[i] == '.') {
            if (i == start || i - start > 3 || idx >= 4) return std::nullopt;
            uint32_t v = 0;
            for (size_t j = start; j < i; j++) {
                if (dotted[j] < '0' || dotted[j] > '9') return std::nullopt;
                v = v * 10 + static_cast<uint32_t>(dotted[j] - '0');
            }
            if (v > 255) return std::nullopt;
            parts[idx++] = v;
            start = i + 1;
        }
    }
    if (idx != 4) return std::nullopt;
    return from_value((parts[0] << 24) | (parts[1] << 16) | (parts[2] << 8) | parts[3]);
}

std::string EndpointId::str() const {
    std::ostringstream os;
    os << ((v_ >> 24) & 0xff) << '.' << ((v_ >> 16) & 0xff) << '.' << ((v_ >> 8) & 0xff) << '.'
       << (v_ & 0xff);
    return os.str();
}

}  // namespace xdac::ctrl
