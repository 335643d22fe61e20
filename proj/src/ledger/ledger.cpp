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

#include "xdac/ledger/ledger.hpp"

#include <algorithm>
#include <filesystem>
#include <future>
#include <set>
#include <stdexcept>

#include "xdac/ledger/codec.hpp"

namespace xdac::ledger {

namespace {

Block make_genesis() {
    Block g;
    g.height = 0;
    g.prev_digest = {};
    g.cut_reason = CutReason::Genesis;
    g.cut_time_ms = 0;
    return g;
}

bool expired(const std::optional<uint64_t>& expiry_ms, uint64_t now_ms) {
    return expiry_ms && *expiry_ms < now_ms;
}

}  // namespace

Ledger::Ledger(LedgerConfig cfg, Clock* clock) : cfg_(std::move(cfg)), clock_(clock) {
    if (!cfg_.log_path.empty()) {
        if (std::filesystem::exists(cfg_.log_path) &&
            std::filesystem::file_size(cfg_.log_path) > 8)
            throw std::runtime_error("chain log already has blocks; use Ledger::open: " +
                                     cfg_.log_path);
        auto log = BlockLog::open(cfg_.log_path);
        if (!log) throw std::runtime_error(log.error());
        log_ = std::move(log).value();
    }
    Block genesis = make_genesis();
    Bytes rec = codec::encode_block(genesis, true);
    chain_bytes_ += 4 + rec.size();
    if (log_) log_->append(rec);
    committed_tip_ = tip_digest_ = genesis.digest();
    committed_height_ = 0;
    next_height_ = 1;
}

// -- registry ---------------------------------------------------------------

Result<std::monostate, LedgerError> Ledger::register_org(const OrgId& org_id,
                                                         const crypto::PublicKey& public_key) {
    if (org_id.empty())
        return LedgerError{LedgerErrorCode::InvalidKey, "empty org id"};
    if (!crypto::valid_public_key(public_key))
        return LedgerError{LedgerErrorCode::InvalidKey, "malformed public key for " + org_id};
    std::lock_guard lock(registry_mu_);
    if (registry_.count(org_id))
        return LedgerError{LedgerErrorCode::DuplicateOrg, org_id + " already registered"};
    registry_[org_id] = public_key;
    return std::monostate{};
}

bool Ledger::org_registered(const OrgId& org_id) const {
    std::lock_guard lock(registry_mu_);
    return registry_.count(org_id) > 0;
}

std::optional<crypto::PublicKey> Ledger::org_key(const OrgId& org_id) const {
    std::lock_guard lock(registry_mu_);
    auto it = registry_.find(org_id);
    if (it == registry_.end()) return std::nullopt;
    return it->second;
}

std::vector<OrgId> Ledger::org_ids() const {
    std::lock_guard lock(registry_mu_);
    std::vector<OrgId> out;
    out.reserve(registry_.size());
    for (const auto& [id, _] : registry_) out.push_back(id);
    return out;
}

EndorsementPolicyExpr Ledger::effective_policy() const {
    if (cfg_.endorsement_policy) return *cfg_.endorsement_policy;
    std::vector<EndorsementPolicyExpr> all;
    {
        std::lock_guard lock(registry_mu_);
        for (const auto& [id, _] : registry_) all.push_back(EndorsementPolicyExpr::org(id));
    }
    return EndorsementPolicyExpr::all_of(std::move(all));
}

// -- transaction pipeline -----------------------------------------------------

Result<RwSet, LedgerError> Ledger::simulate(const TransactionProposal& proposal) const {
    if (!org_registered(proposal.issuer))
        return LedgerError{LedgerErrorCode::UnknownOrg,
                           "issuer not registered: " + proposal.issuer};
    simulations_.fetch_add(1, std::memory_order_relaxed);
    return simulate_chaincode(proposal, state_);
}

Result<Endorsement, LedgerError> Ledger::endorse(const TransactionProposal& proposal,
                                                 const OrgIdentity& signer,
                                                 const crypto::Digest* expected_rwset_digest) const {
    auto registered = org_key(signer.org_id);
    if (!registered)
        return LedgerError{LedgerErrorCode::UnknownOrg,
                           "endorser not registered: " + signer.org_id};
    if (*registered != signer.public_key)
        return LedgerError{LedgerErrorCode::InvalidKey,
                           "identity key does not match registry for " + signer.org_id};

    auto rw = simulate(proposal);
    if (!rw)
        return LedgerError{LedgerErrorCode::ChaincodeRejection,
                           std::string(ledger_error_name(rw.error().code)) + ": " +
                               rw.error().detail};
    crypto::Digest rwd = rw.value().digest();
    if (expected_rwset_digest && rwd != *expected_rwset_digest)
        return LedgerError{LedgerErrorCode::SimulationMismatch,
                           signer.org_id + " simulated diverging effects"};

    Endorsement e;
    e.endorser = signer.org_id;
    e.signature = crypto::sign_digest(signer.secret_key,
                                      endorsement_digest(proposal.id(), rwd));
    return e;
}

Result<EndorsedTransaction, LedgerError> Ledger::build_transaction(
    const TransactionProposal& proposal, std::span<const OrgIdentity> endorsers) const {
    auto rw = simulate(proposal);
    if (!rw) return rw.error();
    EndorsedTransaction tx;
    tx.proposal = proposal;
    tx.rwset = std::move(rw).value();
    crypto::Digest rwd = tx.rwset.digest();
    for (const auto& signer : endorsers) {
        auto e = endorse(proposal, signer, &rwd);
        if (!e) return e.error();
        tx.endorsements.push_back(std::move(e).value());
    }
    return tx;
}

std::set<OrgId> Ledger::verify_endorsements(const EndorsedTransaction& tx,
                                            std::atomic<uint64_t>& counter) const {
    const crypto::Digest signed_digest =
        endorsement_digest(tx.proposal.id(), tx.rwset.digest());

    auto verify_one = [&](const Endorsement& e) -> std::optional<OrgId> {
        auto pk = org_key(e.endorser);
        if (!pk) return std::nullopt;
        counter.fetch_add(1, std::memory_order_relaxed);
        if (!crypto::verify_digest(*pk, signed_digest, e.signature)) return std::nullopt;
        return e.endorser;
    };

    std::set<OrgId> valid;
    if (cfg_.sequential_verify || tx.endorsements.size() < 2) {
        for (const auto& e : tx.endorsements)
            if (auto org = verify_one(e)) valid.insert(*org);
    } else {
        std::vector<std::future<std::optional<OrgId>>> futures;
        futures.reserve(tx.endorsements.size());
        for (const auto& e : tx.endorsements)
            futures.push_back(std::async(std::launch::async, verify_one, std::cref(e)));
        for (auto& f : futures)
            if (auto org = f.get()) valid.insert(*org);
    }
    return valid;
}

Result<std::monostate, LedgerError> Ledger::submit_to_orderer(EndorsedTransaction tx) {
    if (tx.rwset.writes.empty())
        return LedgerError{LedgerErrorCode::BadAsset, "transaction writes nothing"};

    std::set<OrgId> valid = verify_endorsements(tx, submit_verifies_);
    if (valid.empty())
        return LedgerError{LedgerErrorCode::PolicyUnsatisfied, "no valid endorsement"};
    if (!effective_policy().evaluate(valid))
        return LedgerError{LedgerErrorCode::PolicyUnsatisfied,
                           "endorsement policy not satisfied by " +
                               std::to_string(valid.size()) + " endorsement(s)"};

    uint64_t now = clock_->now_ms();
    std::lock_guard lock(orderer_mu_);
    if (queue_.empty()) first_enqueue_ms_ = now;
    queue_.push_back(std::move(tx));
    return std::monostate{};
}

size_t Ledger::pending_txs() const {
    std::lock_guard lock(orderer_mu_);
    return queue_.size();
}

std::optional<Block> Ledger::cut_block(uint64_t now_ms) {
    std::vector<EndorsedTransaction> txs;
    CutReason reason;
    {
        std::lock_guard lock(orderer_mu_);
        if (queue_.empty()) return std::nullopt;
        if (queue_.size() >= cfg_.max_block_txs) {
            reason = CutReason::MaxCount;
            for (uint32_t i = 0; i < cfg_.max_block_txs; i++) {
                txs.push_back(std::move(queue_.front()));
                queue_.pop_front();
            }
            first_enqueue_ms_ = now_ms;  // the remainder starts a new window
        } else if (now_ms - first_enqueue_ms_ >= cfg_.block_timeout_ms) {
            reason = CutReason::Timeout;
            while (!queue_.empty()) {
                txs.push_back(std::move(queue_.front()));
                queue_.pop_front();
            }
        } else {
            return std::nullopt;
        }
    }

    Block b;
    b.cut_reason = reason;
    b.cut_time_ms = now_ms;
    b.transactions = std::move(txs);
    {
        std::lock_guard lock(commit_mu_);
        b.height = next_height_++;
        b.prev_digest = tip_digest_;
        tip_digest_ = b.digest();
    }
    return b;
}

Result<std::vector<uint8_t>, LedgerError> Ledger::validate_and_commit(Block& block) {
    return commit_internal(block, /*replaying=*/false);
}

Result<std::vector<uint8_t>, LedgerError> Ledger::commit_internal(Block& block, bool replaying) {
    // Signature verification happens outside the state lock; with the
    // sequential flag set, one verification at a time (the instrumented
    // count per transaction equals its endorsement count).
    std::vector<std::set<OrgId>> valid_sets;
    valid_sets.reserve(block.transactions.size());
    for (const auto& tx : block.transactions)
        valid_sets.push_back(verify_endorsements(tx, commit_verifies_));

    const EndorsementPolicyExpr policy = effective_policy();

    std::lock_guard commit_lock(commit_mu_);
    if (block.height != committed_height_ + 1 && !(replaying && block.height == 0))
        return LedgerError{LedgerErrorCode::BrokenChain,
                           "height " + std::to_string(block.height) + " does not follow " +
                               std::to_string(committed_height_)};
    if (block.height != 0 && block.prev_digest != committed_tip_)
        return LedgerError{LedgerErrorCode::BrokenChain,
                           "prev digest mismatch at height " + std::to_string(block.height)};

    // Track writes applied by earlier transactions of this same block so a
    // later transaction reading those keys is flagged stale.
    struct Pending {
        bool exists;
        Bytes value;
        Version version;
    };
    std::unordered_map<std::string, Pending> pending;
    std::vector<std::pair<WriteOp, Version>> batch;
    std::vector<uint8_t> flags(block.transactions.size(), 0);

    auto current_version = [&](const std::string& key) -> std::optional<Version> {
        auto it = pending.find(key);
        if (it != pending.end())
            return it->second.exists ? std::optional<Version>(it->second.version) : std::nullopt;
        return state_.version_of(key);
    };
    auto current_value = [&](const std::string& key) -> std::optional<Bytes> {
        auto it = pending.find(key);
        if (it != pending.end())
            return it->second.exists ? std::optional<Bytes>(it->second.value) : std::nullopt;
        auto e = state_.get(key);
        if (!e) return std::nullopt;
        return e->value;
    };

    struct IndexDelta {
        std::string key;
        std::optional<Bytes> before;
        std::optional<Bytes> after;
    };
    std::vector<IndexDelta> deltas;

    for (size_t i = 0; i < block.transactions.size(); i++) {
        const auto& tx = block.transactions[i];
        if (valid_sets[i].empty() || !policy.evaluate(valid_sets[i])) continue;

        bool stale = false;
        for (const auto& read : tx.rwset.reads) {
            if (current_version(read.key) != read.version) {
                stale = true;
                break;
            }
        }
        if (stale) continue;

        flags[i] = 1;
        Version v{block.height, static_cast<uint32_t>(i)};
        for (const auto& op : tx.rwset.writes) {
            if (op.key.rfind("user:", 0) == 0 || op.key.rfind("res:", 0) == 0 ||
                op.key.rfind("dept:", 0) == 0)
                deltas.push_back({op.key, current_value(op.key),
                                  op.kind == WriteKind::Delete ? std::nullopt
                                                               : std::optional<Bytes>(op.value)});
            pending[op.key] = Pending{op.kind != WriteKind::Delete, op.value, v};
            batch.emplace_back(op, v);
        }
    }

    if (replaying && !block.validity.empty() && block.validity != flags)
        return LedgerError{LedgerErrorCode::BrokenChain,
                           "stored validity flags diverge at height " +
                               std::to_string(block.height)};

    state_.apply_batch(batch);
    block.validity = flags;

    Bytes rec = codec::encode_block(block, true);
    if (!replaying) {
        chain_bytes_ += 4 + rec.size();
        if (log_) log_->append(rec);
    }
    committed_height_ = block.height;
    committed_tip_ = block.digest();

    // Derived lookup structures (endpoint addresses, group membership).
    if (!deltas.empty()) {
        std::lock_guard index_lock(eid_mu_);
        for (const auto& d : deltas) {
            auto detach = [&](const Bytes& bytes) {
                auto asset = codec::decode_asset(bytes);
                if (!asset) return;
                uint32_t ip = 0;
                if (asset->kind == AssetKind::User) ip = std::get<UserBody>(asset->body).ip;
                if (asset->kind == AssetKind::Resource) ip = std::get<ResourceBody>(asset->body).ip;
                if (ip) {
                    auto& refs = eid_index_[ip];
                    refs.erase(std::remove(refs.begin(), refs.end(), d.key), refs.end());
                    if (refs.empty()) eid_index_.erase(ip);
                }
                if (asset->kind == AssetKind::Department) {
                    const auto& dept = std::get<DepartmentBody>(asset->body);
                    std::string dept_ref = dept.org + "." + dept.name;
                    for (const auto& m : dept.members) membership_.erase({m.user_ref, dept_ref});
                }
            };
            auto attach = [&](const Bytes& bytes) {
                auto asset = codec::decode_asset(bytes);
                if (!asset) return;
                uint32_t ip = 0;
                if (asset->kind == AssetKind::User) ip = std::get<UserBody>(asset->body).ip;
                if (asset->kind == AssetKind::Resource) ip = std::get<ResourceBody>(asset->body).ip;
                if (ip) eid_index_[ip].push_back(d.key);
                if (asset->kind == AssetKind::Department) {
                    const auto& dept = std::get<DepartmentBody>(asset->body);
                    std::string dept_ref = dept.org + "." + dept.name;
                    for (const auto& m : dept.members)
                        membership_[{m.user_ref, dept_ref}] = m.expiry_ms;
                }
            };
            if (d.before) detach(*d.before);
            if (d.after) attach(*d.after);
        }
    }

    return flags;
}

std::vector<CommitResult> Ledger::pump(uint64_t now_ms) {
    std::vector<CommitResult> out;
    while (auto block = cut_block(now_ms)) {
        auto flags = validate_and_commit(*block);
        if (!flags) break;  // unreachable for blocks we cut ourselves
        CommitResult r;
        r.height = block->height;
        r.cut_reason = block->cut_reason;
        r.validity = flags.value();
        for (const auto& tx : block->transactions) r.tx_ids.push_back(tx.proposal.id());
        out.push_back(std::move(r));
    }
    return out;
}

// -- queries ------------------------------------------------------------------

std::optional<StateStore::Entry> Ledger::query_state(const std::string& key) const {
    return state_.get(key);
}

std::optional<Asset> Ledger::get_asset(const std::string& key) const {
    auto e = state_.get(key);
    if (!e) return std::nullopt;
    return codec::decode_asset(e->value);
}

std::optional<PolicyBody> Ledger::query_policy(const std::string& src_ref,
                                               const std::string& dst_ref) const {
    auto asset = get_asset(policy_key(src_ref, dst_ref));
    if (!asset || asset->kind != AssetKind::Policy) return std::nullopt;
    const auto& p = std::get<PolicyBody>(asset->body);
    if (expired(p.expiry_ms, clock_->now_ms())) return std::nullopt;
    return p;
}

Action Ledger::resolve_access(const std::string& user_ref,
                              const std::string& resource_ref) const {
    uint64_t now = clock_->now_ms();
    bool any_allow = false;

    auto consider = [&](const std::string& src_ref) -> std::optional<Action> {
        auto asset = get_asset(policy_key(src_ref, resource_ref));
        if (!asset || asset->kind != AssetKind::Policy) return std::nullopt;
        const auto& p = std::get<PolicyBody>(asset->body);
        if (expired(p.expiry_ms, now)) return std::nullopt;
        return p.action;
    };

    if (auto direct = consider(user_ref)) {
        if (*direct == Action::Deny) return Action::Deny;
        any_allow = true;
    }

    std::vector<std::pair<std::string, std::optional<uint64_t>>> groups;
    {
        std::lock_guard lock(eid_mu_);
        auto lo = membership_.lower_bound({user_ref, ""});
        for (auto it = lo; it != membership_.end() && it->first.first == user_ref; ++it)
            groups.emplace_back(it->first.second, it->second);
    }
    for (const auto& [dept_ref, member_expiry] : groups) {
        if (expired(member_expiry, now)) continue;
        if (auto via = consider(dept_ref)) {
            if (*via == Action::Deny) return Action::Deny;
            any_allow = true;
        }
    }
    return any_allow ? Action::Allow : Action::Deny;
}

std::optional<crypto::PublicKey> Ledger::get_user_pubkey(const std::string& user_ref) const {
    auto asset = get_asset(user_key(user_ref));
    if (!asset || asset->kind != AssetKind::User) return std::nullopt;
    const auto& u = std::get<UserBody>(asset->body);
    if (!u.has_pubkey) return std::nullopt;
    return u.pubkey;
}

std::vector<PolicyPair> Ledger::export_policy_snapshot() const {
    uint64_t now = clock_->now_ms();
    std::vector<PolicyPair> out;
    state_.for_each_sorted([&](const std::string& key, const StateStore::Entry& e) {
        if (key.rfind("policy:", 0) != 0) return;
        auto asset = codec::decode_asset(e.value);
        if (!asset || asset->kind != AssetKind::Policy) return;
        const auto& p = std::get<PolicyBody>(asset->body);
        if (p.action != Action::Allow || expired(p.expiry_ms, now)) return;
        out.push_back({p.src_ref, p.dst_ref});
    });
    return out;
}

std::vector<AuthorizedPair> Ledger::export_authorized_pairs() const {
    uint64_t now = clock_->now_ms();

    auto user_ip = [&](const std::string& ref) -> uint32_t {
        auto a = get_asset(user_key(ref));
        if (!a || a->kind != AssetKind::User) return 0;
        return std::get<UserBody>(a->body).ip;
    };

    // (ip, earliest expiry along the granting path)
    using Grant = std::pair<uint32_t, std::optional<uint64_t>>;

    auto src_grants = [&](const std::string& ref) {
        std::vector<Grant> out;
        if (auto dept = get_asset(dept_key(ref)); dept && dept->kind == AssetKind::Department) {
            for (const auto& m : std::get<DepartmentBody>(dept->body).members) {
                if (expired(m.expiry_ms, now)) continue;
                if (uint32_t ip = user_ip(m.user_ref)) out.push_back({ip, m.expiry_ms});
            }
        } else if (uint32_t ip = user_ip(ref)) {
            out.push_back({ip, std::nullopt});
        }
        return out;
    };

    auto dst_ips = [&](const std::string& ref) {
        std::vector<uint32_t> ips;
        if (auto res = get_asset(resource_key(ref)); res && res->kind == AssetKind::Resource) {
            if (uint32_t ip = std::get<ResourceBody>(res->body).ip) ips.push_back(ip);
        } else if (uint32_t ip = user_ip(ref)) {
            ips.push_back(ip);
        }
        return ips;
    };

    auto earliest = [](std::optional<uint64_t> a,
                       std::optional<uint64_t> b) -> std::optional<uint64_t> {
        if (!a) return b;
        if (!b) return a;
        return std::min(*a, *b);
    };

    // Collect policies first: the iteration callback must not re-enter the
    // store, and the expansion below reads user/dept/resource assets.
    std::vector<PolicyBody> policies;
    state_.for_each_sorted([&](const std::string& key, const StateStore::Entry& e) {
        if (key.rfind("policy:", 0) != 0) return;
        auto asset = codec::decode_asset(e.value);
        if (!asset || asset->kind != AssetKind::Policy) return;
        const auto& p = std::get<PolicyBody>(asset->body);
        if (p.action != Action::Allow || expired(p.expiry_ms, now)) return;
        policies.push_back(p);
    });

    std::map<std::pair<uint32_t, uint32_t>, std::optional<uint64_t>> pairs;
    for (const auto& p : policies) {
        for (const auto& [src_ip, member_expiry] : src_grants(p.src_ref)) {
            std::optional<uint64_t> path_expiry = earliest(p.expiry_ms, member_expiry);
            for (uint32_t dst_ip : dst_ips(p.dst_ref)) {
                auto it = pairs.find({src_ip, dst_ip});
                if (it == pairs.end()) {
                    pairs[{src_ip, dst_ip}] = path_expiry;
                } else if (it->second) {
                    // several granting paths: the most permissive bound wins
                    if (!path_expiry)
                        it->second = std::nullopt;
                    else if (*path_expiry > *it->second)
                        it->second = path_expiry;
                }
            }
        }
    }

    std::vector<AuthorizedPair> out;
    out.reserve(pairs.size());
    for (const auto& [key, expiry] : pairs) out.push_back({key.first, key.second, expiry});
    return out;
}

std::vector<UserKeyRecord> Ledger::export_user_keys() const {
    std::vector<UserKeyRecord> out;
    state_.for_each_sorted([&](const std::string& key, const StateStore::Entry& e) {
        if (key.rfind("user:", 0) != 0) return;
        auto asset = codec::decode_asset(e.value);
        if (!asset || asset->kind != AssetKind::User) return;
        const auto& u = std::get<UserBody>(asset->body);
        if (!u.has_pubkey) return;
        out.push_back({u.org + "." + u.name, u.pubkey, u.ip});
    });
    return out;
}

std::vector<std::string> Ledger::endpoint_refs_at(uint32_t eid) const {
    std::lock_guard lock(eid_mu_);
    auto it = eid_index_.find(eid);
    if (it == eid_index_.end()) return {};
    return it->second;
}

EidAccess Ledger::check_access_by_eid(const std::string& user_ref, uint32_t src_eid,
                                      uint32_t dst_eid) const {
    auto user = get_asset(user_key(user_ref));
    if (!user || user->kind != AssetKind::User) return EidAccess::UnknownUser;
    if (std::get<UserBody>(user->body).ip != src_eid) return EidAccess::NoPolicy;

    for (const auto& key : endpoint_refs_at(dst_eid)) {
        auto colon = key.find(':');
        if (colon == std::string::npos) continue;
        std::string ref = key.substr(colon + 1);
        if (resolve_access(user_ref, ref) == Action::Allow) return EidAccess::Allow;
    }
    return EidAccess::NoPolicy;
}

uint64_t Ledger::height() const {
    std::lock_guard lock(commit_mu_);
    return committed_height_;
}

crypto::Digest Ledger::tip_digest() const {
    std::lock_guard lock(commit_mu_);
    return committed_tip_;
}

uint64_t Ledger::chain_size_bytes() const { return chain_bytes_.load(); }

LedgerMetrics Ledger::metrics() const {
    LedgerMetrics m;
    m.submit_signature_verifies = submit_verifies_.load();
    m.commit_signature_verifies = commit_verifies_.load();
    m.simulations = simulations_.load();
    m.store_gets = state_.get_count();
    m.store_puts = state_.put_count();
    return m;
}

void Ledger::reset_metrics() {
    submit_verifies_ = 0;
    commit_verifies_ = 0;
    simulations_ = 0;
    state_.reset_counters();
}

// -- replay -------------------------------------------------------------------

Result<std::unique_ptr<Ledger>, LedgerError> Ledger::open(
    LedgerConfig cfg, Clock* clock,
    const std::vector<std::pair<OrgId, crypto::PublicKey>>& orgs) {
    if (cfg.log_path.empty())
        return LedgerError{LedgerErrorCode::Io, "Ledger::open needs a log path"};
    auto records = BlockLog::read_all(cfg.log_path);
    if (!records) return LedgerError{LedgerErrorCode::Io, records.error()};
    if (records.value().empty())
        return LedgerError{LedgerErrorCode::BrokenChain, "log has no genesis block"};

    std::string log_path = cfg.log_path;
    cfg.log_path.clear();  // construct in memory, reattach the log afterwards
    auto ledger = std::make_unique<Ledger>(std::move(cfg), clock);
    for (const auto& [id, pk] : orgs) {
        auto r = ledger->register_org(id, pk);
        if (!r) return r.error();
    }

    for (size_t i = 0; i < records.value().size(); i++) {
        const Bytes& rec = records.value()[i];
        auto block = codec::decode_block(rec);
        if (!block)
            return LedgerError{LedgerErrorCode::BrokenChain,
                               "undecodable block record " + std::to_string(i)};
        if (i == 0) {
            // Genesis is created by the constructor; the stored one must match.
            if (block->height != 0 || !block->transactions.empty() ||
                block->digest() != ledger->tip_digest())
                return LedgerError{LedgerErrorCode::BrokenChain, "genesis mismatch"};
            continue;
        }
        auto flags = ledger->commit_internal(*block, /*replaying=*/true);
        if (!flags) return flags.error();
        ledger->chain_bytes_ += 4 + rec.size();
        {
            std::lock_guard lock(ledger->commit_mu_);
            ledger->next_height_ = block->height + 1;
            ledger->tip_digest_ = ledger->committed_tip_;
        }
    }

    auto log = BlockLog::open(log_path);
    if (!log) return LedgerError{LedgerErrorCode::Io, log.error()};
    ledger->log_ = std::move(log).value();
    ledger->cfg_.log_path = log_path;
    ledger->reset_metrics();
    return ledger;
}

}  // namespace xdac::ledger
