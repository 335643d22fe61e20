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

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>

#include "xdac/common/clock.hpp"
#include "xdac/ledger/block_log.hpp"
#include "xdac/ledger/chaincode.hpp"
#include "xdac/ledger/endorsement.hpp"
#include "xdac/ledger/state_store.hpp"

namespace xdac::ledger {

struct LedgerConfig {
    uint64_t block_timeout_ms = 100;
    uint32_t max_block_txs = 500;
    /// Verify endorsement signatures one after another at commit time.
    /// A parallel mode exists but changes only wall-clock behaviour.
    bool sequential_verify = true;
    /// Endorsement policy a transaction must satisfy. When unset, every
    /// registered endorser org must sign (AND over all members).
    std::optional<EndorsementPolicyExpr> endorsement_policy;
    /// Path of the append-only chain log; empty keeps the chain in memory
    /// (sizes still accounted as if written).
    std::string log_path;
};

struct LedgerMetrics {
    uint64_t submit_signature_verifies = 0;
    uint64_t commit_signature_verifies = 0;
    uint64_t simulations = 0;
    uint64_t store_gets = 0;
    uint64_t store_puts = 0;
};

struct CommitResult {
    uint64_t height = 0;
    CutReason cut_reason = CutReason::Timeout;
    std::vector<uint8_t> validity;
    std::vector<crypto::Digest> tx_ids;
};

struct PolicyPair {
    std::string src_ref;
    std::string dst_ref;
    bool operator==(const PolicyPair&) const = default;
    auto operator<=>(const PolicyPair&) const = default;
};

struct UserKeyRecord {
    std::string user_ref;
    crypto::PublicKey pubkey{};
    uint32_t eid = 0;
};

/// One granted (source, destination) address pair; expiry is the earliest
/// bound on the granting path (policy expiry or membership expiry).
struct AuthorizedPair {
    uint32_t src_eid = 0;
    uint32_t dst_eid = 0;
    std::optional<uint64_t> expiry_ms;
    bool operator==(const AuthorizedPair&) const = default;
};

enum class EidAccess : uint8_t { Allow, UnknownUser, NoPolicy };

/// Simulated permissioned ledger: organization registry, SOLO orderer,
/// endorse-order-validate commit path and a versioned key-value state.
/// Commits are serialized through one logical sequencer; queries may run
/// concurrently and only ever observe fully committed blocks.
class Ledger {
public:
    Ledger(LedgerConfig cfg, Clock* clock);

    /// Rebuilds a ledger from its chain log. Blocks are re-validated as
    /// they are applied; stored validity flags must match the re-derived
    /// ones. `orgs` restores the registry (it lives outside the chain).
    static Result<std::unique_ptr<Ledger>, LedgerError> open(
        LedgerConfig cfg, Clock* clock,
        const std::vector<std::pair<OrgId, crypto::PublicKey>>& orgs);

    // -- organization registry ------------------------------------------

    Result<std::monostate, LedgerError> register_org(const OrgId& org_id,
                                                     const crypto::PublicKey& public_key);
    bool org_registered(const OrgId& org_id) const;
    std::optional<crypto::PublicKey> org_key(const OrgId& org_id) const;
    std::vector<OrgId> org_ids() const;

    // -- transaction pipeline -------------------------------------------

    Result<RwSet, LedgerError> simulate(const TransactionProposal& proposal) const;

    /// Re-executes the proposal on this replica's state and signs the
    /// effects. When `expected_rwset_digest` is given and the local
    /// simulation disagrees, fails with SimulationMismatch.
    Result<Endorsement, LedgerError> endorse(
        const TransactionProposal& proposal, const OrgIdentity& signer,
        const crypto::Digest* expected_rwset_digest = nullptr) const;

    /// Simulate once, then collect one endorsement per identity against
    /// the simulated effects.
    Result<EndorsedTransaction, LedgerError> build_transaction(
        const TransactionProposal& proposal, std::span<const OrgIdentity> endorsers) const;

    /// Admits a transaction to the ordering queue. Endorsement signatures
    /// are verified (invalid ones stripped) and the endorsement policy
    /// evaluated; unsatisfied transactions are refused.
    Result<std::monostate, LedgerError> submit_to_orderer(EndorsedTransaction tx);

    /// Cuts the next block if the queue hit max_block_txs, or if
    /// block_timeout_ms elapsed since the first queued transaction.
    std::optional<Block> cut_block(uint64_t now_ms);

    /// Validates every transaction of the block (endorsement policy,
    /// signatures, read-set staleness) and applies the valid ones in
    /// order. Invalid transactions stay in the chain, flagged.
    Result<std::vector<uint8_t>, LedgerError> validate_and_commit(Block& block);

    /// cut_block + validate_and_commit until nothing is cuttable.
    std::vector<CommitResult> pump(uint64_t now_ms);

    size_t pending_txs() const;

    // -- queries ----------------------------------------------------------

    std::optional<StateStore::Entry> query_state(const std::string& key) const;
    std::optional<Asset> get_asset(const std::string& key) const;

    /// Exact composite-key lookup; policies past their expiry are absent.
    std::optional<PolicyBody> query_policy(const std::string& src_ref,
                                           const std::string& dst_ref) const;

    /// Allow iff a direct user->dst policy or an unexpired group
    /// membership with a group->dst policy grants it; an explicit Deny
    /// wins; default deny.
    Action resolve_access(const std::string& user_ref, const std::string& resource_ref) const;

    std::optional<crypto::PublicKey> get_user_pubkey(const std::string& user_ref) const;

    /// Committed, unexpired Allow policies as (src-ref, dst-ref) pairs.
    std::vector<PolicyPair> export_policy_snapshot() const;

    /// Same policies expanded to concrete (src-eid, dst-eid) address pairs:
    /// group sources expand to their unexpired members; endpoints without
    /// an address are skipped. Sorted, deduplicated; when several paths
    /// grant a pair the latest expiry wins (no expiry beats any bound).
    std::vector<AuthorizedPair> export_authorized_pairs() const;

    /// Users that carry a public key, with their address.
    std::vector<UserKeyRecord> export_user_keys() const;

    /// Authorization check by wire addresses, for the map-resolution slow
    /// path: verifies the user's registered address matches src_eid and
    /// that some destination endpoint at dst_eid is reachable per
    /// resolve_access.
    EidAccess check_access_by_eid(const std::string& user_ref, uint32_t src_eid,
                                  uint32_t dst_eid) const;

    uint64_t height() const;
    crypto::Digest tip_digest() const;
    uint64_t chain_size_bytes() const;
    size_t state_size() const { return state_.size(); }
    Bytes state_snapshot() const { return state_.snapshot_bytes(); }

    LedgerMetrics metrics() const;
    void reset_metrics();

    Clock& clock() const { return *clock_; }
    const LedgerConfig& config() const { return cfg_; }

private:
    EndorsementPolicyExpr effective_policy() const;
    std::set<OrgId> verify_endorsements(const EndorsedTransaction& tx,
                                        std::atomic<uint64_t>& counter) const;
    void apply_write(const WriteOp& op, Version version);
    Result<std::vector<uint8_t>, LedgerError> commit_internal(Block& block, bool replaying);
    std::vector<std::string> endpoint_refs_at(uint32_t eid) const;

    LedgerConfig cfg_;
    Clock* clock_;

    mutable std::mutex registry_mu_;
    std::map<OrgId, crypto::PublicKey> registry_;

    mutable std::mutex orderer_mu_;
    std::deque<EndorsedTransaction> queue_;
    uint64_t first_enqueue_ms_ = 0;

    mutable std::mutex commit_mu_;
    uint64_t next_height_ = 0;       // next block to cut
    crypto::Digest tip_digest_{};    // tip of the cut chain
    uint64_t committed_height_ = 0;  // last committed block
    crypto::Digest committed_tip_{};
    std::atomic<uint64_t> chain_bytes_{0};
    std::optional<BlockLog> log_;

    StateStore state_;

    mutable std::mutex eid_mu_;
    std::unordered_map<uint32_t, std::vector<std::string>> eid_index_;  // eid -> state keys
    // (user_ref, dept_ref) -> membership expiry; derived from committed state
    std::map<std::pair<std::string, std::string>, std::optional<uint64_t>> membership_;

    mutable std::atomic<uint64_t> submit_verifies_{0};
    mutable std::atomic<uint64_t> commit_verifies_{0};
    mutable std::atomic<uint64_t> simulations_{0};
};

}  // namespace xdac::ledger
