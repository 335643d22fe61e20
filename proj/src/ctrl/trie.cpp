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

#include "xdac/ctrl/trie.hpp"

#include <algorithm>
#include <bit>

namespace xdac::ctrl {

namespace {

uint8_t common_prefix_len(uint64_t a, uint8_t alen, uint64_t b, uint8_t blen) {
    uint8_t lim = std::min(alen, blen);
    uint64_t diff = a ^ b;
    if (diff == 0) return lim;
    uint8_t same = static_cast<uint8_t>(std::countl_zero(diff));
    return std::min(lim, same);
}

}  // namespace

void PolicyTrie::insert_prefix(uint64_t key, uint8_t prefix_len, AllowRecord record) {
    key &= mask(prefix_len);
    Node* cur = root_.get();
    while (true) {
        // invariant: key matches cur->prefix on cur->plen bits, cur->plen <= prefix_len
        if (cur->plen == prefix_len) {
            if (!cur->value) entries_++;
            cur->value = record;
            return;
        }
        int bit = bit_at(key, cur->plen);
        std::unique_ptr<Node>& slot = cur->child[bit];
        if (!slot) {
            slot.reset(new Node{key, prefix_len, record, {nullptr, nullptr}});
            nodes_++;
            entries_++;
            return;
        }
        uint8_t cpl = common_prefix_len(key, prefix_len, slot->prefix, slot->plen);
        if (cpl == slot->plen) {
            cur = slot.get();
            continue;
        }
        // the new key diverges inside slot's label: split at cpl
        auto mid = std::unique_ptr<Node>(
            new Node{key & mask(cpl), cpl, std::nullopt, {nullptr, nullptr}});
        nodes_++;
        int old_bit = bit_at(slot->prefix, cpl);
        mid->child[old_bit] = std::move(slot);
        if (cpl == prefix_len) {
            mid->value = record;
        } else {
            mid->child[bit_at(key, cpl)].reset(new Node{key, prefix_len, record, {nullptr, nullptr}});
            nodes_++;
        }
        entries_++;
        cur->child[bit] = std::move(mid);
        return;
    }
}

bool PolicyTrie::erase_prefix(uint64_t key, uint8_t prefix_len) {
    key &= mask(prefix_len);
    // walk down remembering the path
    std::vector<Node*> path;
    Node* cur = root_.get();
    while (true) {
        if (!covers(cur, key) || cur->plen > prefix_len) return false;
        if (cur->plen == prefix_len) break;
        path.push_back(cur);
        Node* next = cur->child[bit_at(key, cur->plen)].get();
        if (!next) return false;
        cur = next;
    }
    if (!cur->value) return false;
    cur->value.reset();
    entries_--;

    // restore the radix invariant walking back up
    Node* node = cur;
    while (node != root_.get() && !node->value) {
        Node* parent = path.empty() ? root_.get() : path.back();
        std::unique_ptr<Node>& slot = parent->child[bit_at(node->prefix, parent->plen)];
        int kids = (node->child[0] ? 1 : 0) + (node->child[1] ? 1 : 0);
        if (kids == 0) {
            slot.reset();
            nodes_--;
        } else if (kids == 1) {
            std::unique_ptr<Node> only =
                std::move(node->child[0] ? node->child[0] : node->child[1]);
            slot = std::move(only);
            nodes_--;
        } else {
            break;  // still a proper two-way branch
        }
        if (path.empty()) break;
        node = path.back();
        path.pop_back();
    }
    return true;
}

PolicyTrie::LookupResult PolicyTrie::lookup(uint64_t key) const {
    LookupResult r;
    const Node* cur = root_.get();
    while (cur) {
        r.nodes_visited++;
        if (!covers(cur, key)) return r;
        if (cur->plen == 64) {
            if (cur->value) {
                r.record = &*cur->value;
                r.match_len = 64;
            }
            return r;
        }
        cur = cur->child[bit_at(key, cur->plen)].get();
    }
    return r;
}

PolicyTrie::LookupResult PolicyTrie::lookup_lpm(uint64_t key) const {
    LookupResult r;
    const Node* cur = root_.get();
    while (cur) {
        r.nodes_visited++;
        if (!covers(cur, key)) break;
        if (cur->value) {
            r.record = &*cur->value;
            r.match_len = cur->plen;
        }
        if (cur->plen == 64) break;
        cur = cur->child[bit_at(key, cur->plen)].get();
    }
    return r;
}

std::vector<std::pair<uint64_t, uint8_t>> PolicyTrie::entries() const {
    std::vector<std::pair<uint64_t, uint8_t>> out;
    out.reserve(entries_);
    std::vector<const Node*> stack{root_.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (n->value) out.push_back({n->prefix, n->plen});
        if (n->child[1]) stack.push_back(n->child[1].get());
        if (n->child[0]) stack.push_back(n->child[0].get());
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool PolicyTrie::check_structure() const {
    struct Frame {
        const Node* node;
        const Node* parent;
    };
    std::vector<Frame> stack{{root_.get(), nullptr}};
    while (!stack.empty()) {
        auto [n, parent] = stack.back();
        stack.pop_back();
        if ((n->prefix & ~mask(n->plen)) != 0) return false;  // junk below the label
        if (parent) {
            if (n->plen <= parent->plen) return false;
            if ((n->prefix ^ parent->prefix) & mask(parent->plen)) return false;
            int kids = (n->child[0] ? 1 : 0) + (n->child[1] ? 1 : 0);
            if (!n->value && kids < 2) return false;  // single-child internal node
        }
        if (n->child[0]) stack.push_back({n->child[0].get(), n});
        if (n->child[1]) stack.push_back({n->child[1].get(), n});
    }
    return true;
}

void PolicyTrie::clear() {
    root_.reset(new Node{0, 0, std::nullopt, {nullptr, nullptr}});
    entries_ = 0;
    nodes_ = 1;
}

}  // namespace xdac::ctrl
