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
#include <functional>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "xdac/ledger/types.hpp"

namespace xdac::ledger {

/// Abstract key-value state: key -> (value bytes, version). Versions are
/// monotone per key; deleted keys are absent from reads. Hash-backed, so
/// lookup cost does not depend on entry count.
class StateStore {
public:
    struct Entry {
        Bytes value;
        Version version;
    };

    std::optional<Entry> get(const std::string& key) const {
        gets_.fetch_add(1, std::memory_order_relaxed);
        std::shared_lock lock(mu_);
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    /// Version of a key without fetching the value (still one store read).
    std::optional<Version> version_of(const std::string& key) const {
        gets_.fetch_add(1, std::memory_order_relaxed);
        std::shared_lock lock(mu_);
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        return it->second.version;
    }

    void put(const std::string& key, Bytes value, Version version) {
        puts_.fetch_add(1, std::memory_order_relaxed);
        std::unique_lock lock(mu_);
        map_[key] = Entry{std::move(value), version};
    }

    void erase(const std::string& key) {
        puts_.fetch_add(1, std::memory_order_relaxed);
        std::unique_lock lock(mu_);
        map_.erase(key);
    }

    /// Applies a whole block's writes atomically: readers observe either
    /// none or all of them.
    void apply_batch(const std::vector<std::pair<WriteOp, Version>>& ops) {
        std::unique_lock lock(mu_);
        for (const auto& [op, version] : ops) {
            puts_.fetch_add(1, std::memory_order_relaxed);
            if (op.kind == WriteKind::Delete)
                map_.erase(op.key);
            else
                map_[op.key] = Entry{op.value, version};
        }
    }

    size_t size() const {
        std::shared_lock lock(mu_);
        return map_.size();
    }

    /// Snapshot iteration in sorted key order. The callback must not touch
    /// the store.
    void for_each_sorted(const std::function<void(const std::string&, const Entry&)>& fn) const;

    /// Canonical bytes of the whole store: sorted (key, value, version)
    /// triples. Two stores with equal content produce identical bytes.
    Bytes snapshot_bytes() const;

    uint64_t get_count() const { return gets_.load(std::memory_order_relaxed); }
    uint64_t put_count() const { return puts_.load(std::memory_order_relaxed); }
    void reset_counters() {
        gets_.store(0, std::memory_order_relaxed);
        puts_.store(0, std::memory_order_relaxed);
    }

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<std::string, Entry> map_;
    mutable std::atomic<uint64_t> gets_{0};
    mutable std::atomic<uint64_t> puts_{0};
};

}  // namespace xdac::ledger
