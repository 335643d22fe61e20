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

#include "xdac/ledger/block_log.hpp"

#include <cstring>
#include <filesystem>

namespace xdac::ledger {

constexpr char BlockLog::kMagic[9];

Result<BlockLog, std::string> BlockLog::open(const std::string& path) {
    bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    BlockLog log;
    log.out_.open(path, std::ios::binary | std::ios::app);
    if (!log.out_) return std::string("cannot open block log: ") + path;
    if (fresh) {
        log.out_.write(kMagic, 8);
        log.out_.flush();
    }
    return log;
}

Result<std::vector<Bytes>, std::string> BlockLog::read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::string("cannot read block log: ") + path;
    char magic[8];
    in.read(magic, 8);
    if (in.gcount() != 8 || std::memcmp(magic, kMagic, 8) != 0)
        return std::string("bad block log magic: ") + path;

    std::vector<Bytes> records;
    while (true) {
        uint8_t len_buf[4];
        in.read(reinterpret_cast<char*>(len_buf), 4);
        if (in.gcount() == 0) break;
        if (in.gcount() != 4) return std::string("truncated record length in ") + path;
        uint32_t len = (static_cast<uint32_t>(len_buf[0]) << 24) |
                       (static_cast<uint32_t>(len_buf[1]) << 16) |
                       (static_cast<uint32_t>(len_buf[2]) << 8) | len_buf[3];
        Bytes rec(len);
        in.read(reinterpret_cast<char*>(rec.data()), len);
        if (static_cast<uint32_t>(in.gcount()) != len)
            return std::string("truncated record in ") + path;
        records.push_back(std::move(rec));
    }
    return records;
}

uint64_t BlockLog::append(const Bytes& block_bytes) {
    uint8_t len_buf[4];
    uint32_t len = static_cast<uint32_t>(block_bytes.size());
    len_buf[0] = static_cast<uint8_t>(len >> 24);
    len_buf[1] = static_cast<uint8_t>(len >> 16);
    len_buf[2] = static_cast<uint8_t>(len >> 8);
    len_buf[3] = static_cast<uint8_t>(len);
    out_.write(reinterpret_cast<const char*>(len_buf), 4);
    out_.write(reinterpret_cast<const char*>(block_bytes.data()),
               static_cast<std::streamsize>(block_bytes.size()));
    out_.flush();
    return 4 + block_bytes.size();
}

}  // namespace xdac::ledger
