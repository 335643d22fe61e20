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

#include <memory>
#include <random>

#include "xdac/bench/report.hpp"
#include "xdac/common/clock.hpp"
#include "xdac/common/result.hpp"
#include "xdac/ledger/ledger.hpp"

namespace xdac::bench {

/// A ledger wired for benchmarks: fixed-width org ids (org01, org02, ...),
/// every org an endorser, AND-of-all endorsement policy, manual clock.
struct TestNetwork {
    std::unique_ptr<ManualClock> clock;
    std::unique_ptr<ledger::Ledger> ledger;
    std::vector<ledger::OrgIdentity> identities;
};

TestNetwork make_network(uint32_t endorsers, uint64_t seed, const std::string& log_path,
                         bool sequential_verify = true);

/// Commits `count` synthetic entries under the opaque "kv:" namespace,
/// 16-byte keys and 16-byte values, batched `per_tx` writes per
/// transaction. Keys are kv:%013x of start_index.. — deterministic.
void load_synthetic_entries(TestNetwork& net, size_t start_index, size_t count, size_t per_tx,
                            std::mt19937_64& rng);

/// One synthetic single-write transaction (fixed size across the run).
ledger::TransactionProposal synthetic_kv_proposal(const std::string& issuer, uint64_t ts_ms,
                                                  size_t index, std::mt19937_64& rng);

struct ReadLatencyOptions {
    std::vector<size_t> entry_counts{1000, 10000, 100000, 1000000};
    size_t queries_per_point = 200;
    size_t warmup_queries = 25;
    uint64_t seed = 42;
    std::string log_path;  // chain log for the populated ledger (optional)
};

/// Exact-match query latency over the ledger query API (socket round trip)
/// for growing entry counts, plus per-query store-operation counts.
Result<BenchReport, BenchError> bench_read_latency(const ReadLatencyOptions& opts);

struct WriteLatencyOptions {
    uint32_t min_endorsers = 1;
    uint32_t max_endorsers = 15;
    size_t samples_per_point = 30;
    size_t warmup_per_point = 3;
    uint64_t seed = 42;
    std::string log_dir;  // per-endorser-count chain logs (optional)
};

/// Full add-user commit latency against k endorsers under sequential
/// signature verification; also the exact per-transaction verification
/// operation counts.
Result<BenchReport, BenchError> bench_write_latency(const WriteLatencyOptions& opts);

struct ChainSizeOptions {
    std::vector<size_t> tx_counts{1000, 2000, 5000, 10000};
    uint32_t fixed_endorsers = 4;
    std::vector<uint32_t> endorser_counts{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
    size_t endorser_grid_txs = 500;
    uint64_t seed = 42;
    std::string log_dir;
};

/// Chain bytes vs. transaction count (fixed endorsers) and per-transaction
/// bytes vs. endorser count (fixed transactions). Fully deterministic.
Result<BenchReport, BenchError> bench_chain_size(const ChainSizeOptions& opts);

struct TrieCdfOptions {
    std::vector<size_t> pair_counts{1000, 10000, 100000};
    size_t queries_per_point = 100000;
    size_t warmup_queries = 1000;
    double hit_fraction = 0.8;
    uint64_t seed = 42;
    bool slow_path_comparison = true;
    size_t slow_path_entries = 10000;
    size_t slow_path_queries = 300;
};

/// Map-server trie lookup latency distribution per pair count, node-visit
/// counts, and optionally the ledger-query slow path for comparison.
Result<BenchReport, BenchError> bench_trie_cdf(const TrieCdfOptions& opts);

}  // namespace xdac::bench
