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

#include <fstream>
#include <string>
#include <vector>

#include "xdac/common/bytes.hpp"
#include "xdac/common/result.hpp"

namespace xdac::ledger {

/// Append-only chain persistence: an 8-byte magic followed by one
/// length-prefixed (u32 BE) canonical-serialized block per record.
class BlockLog {
public:
    static constexpr char kMagic[9] = "XDACBL01";

    /// Opens for appending, writing the magic if the file is new.
    static Result<BlockLog, std::string> open(const std::string& path);

    /// Reads every record of an existing log.
    static Result<std::vector<Bytes>, std::string> read_all(const std::string& path);

    BlockLog(BlockLog&&) = default;
    BlockLog& operator=(BlockLog&&) = default;

    /// Appends one record; returns the bytes added to the file (prefix + body).
    uint64_t append(const Bytes& block_bytes);

    void flush() { out_.flush(); }

private:
    BlockLog() = default;
    std::ofstream out_;
};

}  // namespace xdac::ledger
