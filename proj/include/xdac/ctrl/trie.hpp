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
#include <memory>
#include <optional>
#include <vector>

namespace xdac::ctrl {

struct AllowRecord {
    std::optional<uint64_t> expiry_ms;
    bool operator==(const AllowRecord&) const = default;
};

/// Path-compressed binary radix trie over 64-bit keys, keyed on the
/// concatenation (source-eid || dest-eid). Authorization entries are full
/// 64-bit keys; prefix entries (used by the optional longest-prefix lookup)
/// may stop anywhere from bit 32 on — the source half is always complete.
///
/// Lookup cost is bounded by the key bit-length, not the entry count:
/// every step down consumes at least one key bit, so no lookup visits more
/// than 65 nodes (root included).
///
/// Not internally synchronized; the owner serializes writers.
class PolicyTrie {
public:
    struct LookupResult {
        const AllowRecord* record = nullptr;  // nullptr = miss
        uint32_t nodes_visited = 0;
        uint8_t match_len = 0;  // significant bits of the matched entry
    };

    PolicyTrie() : root_(new Node{0, 0, std::nullopt, {nullptr, nullptr}}) {}

    static uint64_t pair_key(uint32_t src_eid, uint32_t dst_eid) {
        return (static_cast<uint64_t>(src_eid) << 32) | dst_eid;
    }

    /// Inserts or overwrites the exact 64-bit entry.
    void insert(uint64_t key, AllowRecord record) { insert_prefix(key, 64, record); }

    /// Inserts an entry covering keys that share the top `prefix_len` bits.
    void insert_prefix(uint64_t key, uint8_t prefix_len, AllowRecord record);

    /// Removes the exact 64-bit entry; false if absent.
    bool erase(uint64_t key) { return erase_prefix(key, 64); }
    bool erase_prefix(uint64_t key, uint8_t prefix_len);

    /// Exact match on the full 64-bit key.
    LookupResult lookup(uint64_t key) const;

    /// Longest stored prefix covering `key`. Not used by enforcement;
    /// provided for destination-prefix experiments.
    LookupResult lookup_lpm(uint64_t key) const;

    size_t size() const { return entries_; }
    size_t node_count() const { return nodes_; }

    /// All stored (key, prefix_len) entries, sorted.
    std::vector<std::pair<uint64_t, uint8_t>> entries() const;

    /// Radix-structure invariant: no valueless node (root aside) has fewer
    /// than two children, and every child extends its parent's prefix.
    bool check_structure() const;

    void clear();

private:
    struct Node {
        uint64_t prefix;  // top `plen` bits significant, rest zero
        uint8_t plen;
        std::optional<AllowRecord> value;
        std::unique_ptr<Node> child[2];
    };

    static uint64_t mask(uint8_t plen) { return plen == 0 ? 0 : ~0ull << (64 - plen); }
    static int bit_at(uint64_t key, uint8_t pos) { return (key >> (63 - pos)) & 1; }
    static bool covers(const Node* n, uint64_t key) {
        return ((n->prefix ^ key) & mask(n->plen)) == 0;
    }

    std::unique_ptr<Node> root_;
    size_t entries_ = 0;
    size_t nodes_ = 1;
};

}  // namespace xdac::ctrl
