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

#include "xdac/ledger/state_store.hpp"

#include <algorithm>
#include <vector>

#include "xdac/common/wire.hpp"

namespace xdac::ledger {

namespace {

using Item = const std::pair<const std::string, StateStore::Entry>*;

void sort_items(std::vector<Item>& items) {
    std::sort(items.begin(), items.end(),
              [](const Item a, const Item b) { return a->first < b->first; });
}

}  // namespace

void StateStore::for_each_sorted(
    const std::function<void(const std::string&, const Entry&)>& fn) const {
    std::shared_lock lock(mu_);
    std::vector<Item> items;
    items.reserve(map_.size());
    for (const auto& kv : map_) items.push_back(&kv);
    sort_items(items);
    for (const Item kv : items) fn(kv->first, kv->second);
}

Bytes StateStore::snapshot_bytes() const {
    std::shared_lock lock(mu_);
    std::vector<Item> items;
    items.reserve(map_.size());
    for (const auto& kv : map_) items.push_back(&kv);
    sort_items(items);

    wire::Writer w;
    w.u32(static_cast<uint32_t>(items.size()));
    for (const Item kv : items) {
        w.str(kv->first);
        w.blob(kv->second.value);
        w.u64(kv->second.version.block_height);
        w.u32(kv->second.version.tx_index);
    }
    return w.take();
}

}  // namespace xdac::ledger
