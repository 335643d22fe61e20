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

#include "xdac/ctrl/map_server.hpp"

#include <set>

#include "xdac/common/wire.hpp"

namespace xdac::ctrl {

const char* deny_reason_name(DenyReason r) {
    switch (r) {
        case DenyReason::BadSignature: return "BadSignature";
        case DenyReason::UnknownUser: return "UnknownUser";
        case DenyReason::NoPolicy: return "NoPolicy";
        case DenyReason::Expired: return "Expired";
        case DenyReason::Replay: return "Replay";
    }
    return "?";
}

Bytes encode_association(const SecurityAssociation& sa) {
    wire::Writer w;
    w.fixed(sa.shared_secret);
    w.u8(sa.cipher_suite);
    w.u32(sa.lifetime_s);
    return w.take();
}

std::optional<SecurityAssociation> decode_association(const Bytes& b) {
    wire::Reader r(b);
    SecurityAssociation sa;
    sa.shared_secret = r.fixed<32>();
    sa.cipher_suite = r.u8();
    sa.lifetime_s = r.u32();
    if (!r.ok() || !r.at_end()) return std::nullopt;
    return sa;
}

SecurityAssociation TunnelRouter::establish(uint64_t nonce, uint32_t src_eid, uint32_t dst_eid) {
    SecurityAssociation sa;
    crypto::random_bytes(sa.shared_secret.data(), sa.shared_secret.size());
    sa.lifetime_s = lifetime_s_;
    std::lock_guard lock(mu_);
    by_nonce_[nonce] = Entry{sa, src_eid, dst_eid, clock_->now_ms()};
    return sa;
}

bool TunnelRouter::accept(const std::array<uint8_t, 32>& shared_secret, uint32_t src_eid,
                          uint32_t dst_eid) const {
    uint64_t now = clock_->now_ms();
    std::lock_guard lock(mu_);
    for (const auto& [nonce, e] : by_nonce_) {
        if (e.sa.shared_secret != shared_secret) continue;
        if (e.src_eid != src_eid || e.dst_eid != dst_eid) continue;
        return now <= e.created_ms + static_cast<uint64_t>(e.sa.lifetime_s) * 1000;
    }
    return false;
}

std::optional<SecurityAssociation> TunnelRouter::association_for(uint64_t nonce) const {
    std::lock_guard lock(mu_);
    auto it = by_nonce_.find(nonce);
    if (it == by_nonce_.end()) return std::nullopt;
    return it->second.sa;
}

MapService::MapService(MapServiceConfig cfg, Clock* clock, TunnelRouter* router,
                       ledger::LedgerQueryInterface* ledger)
    : cfg_(cfg), clock_(clock), router_(router), ledger_(ledger) {}

void MapService::sync_from_ledger(const std::vector<ledger::AuthorizedPair>& pairs,
                                  const std::vector<ledger::UserKeyRecord>& users) {
    std::unique_lock lock(tables_mu_);

    // diff application: drop stale entries, then upsert the snapshot
    std::set<uint64_t> wanted;
    for (const auto& p : pairs) wanted.insert(PolicyTrie::pair_key(p.src_eid, p.dst_eid));
    for (const auto& [key, plen] : trie_.entries())
        if (plen == 64 && !wanted.count(key)) trie_.erase(key);
    for (const auto& p : pairs)
        trie_.insert(PolicyTrie::pair_key(p.src_eid, p.dst_eid), AllowRecord{p.expiry_ms});

    users_.clear();
    for (const auto& u : users) users_[u.user_ref] = UserEntry{u.pubkey, u.eid};
}

bool MapService::sync_from_ledger() {
    if (!ledger_) return false;
    auto pairs = ledger_->export_authorized_pairs();
    auto users = ledger_->export_user_keys();
    sync_from_ledger(pairs, users);
    return true;
}

void MapService::log_deny(DenyReason reason, const MapRequest& msg, uint64_t now) {
    denies_.fetch_add(1, std::memory_order_relaxed);
    std::lock_guard lock(events_mu_);
    events_.push_back({ServerEvent::Kind::Denied, reason, now, msg.nonce, msg.user_ref});
}

bool MapService::replayed(uint64_t nonce, uint64_t now) {
    std::lock_guard lock(nonce_mu_);
    // opportunistic pruning keeps the cache a sliding window
    for (auto it = nonce_seen_until_.begin(); it != nonce_seen_until_.end();) {
        if (it->second < now)
            it = nonce_seen_until_.erase(it);
        else
            ++it;
    }
    auto [it, inserted] = nonce_seen_until_.try_emplace(nonce, now + cfg_.replay_window_ms);
    return !inserted;
}

std::optional<MapReply> MapService::handle_map_request(const MapRequest& msg) {
    uint64_t now = clock_->now_ms();

    // 1. the user and its ledger-registered key
    std::optional<crypto::PublicKey> pk;
    uint32_t registered_eid = 0;
    if (cfg_.auth_path == MapServiceConfig::AuthPath::Trie) {
        std::shared_lock lock(tables_mu_);
        auto it = users_.find(msg.user_ref);
        if (it != users_.end()) {
            pk = it->second.pubkey;
            registered_eid = it->second.eid;
        }
    } else if (ledger_) {
        pk = ledger_->get_user_pubkey(msg.user_ref);
    }
    if (!pk) {
        log_deny(DenyReason::UnknownUser, msg, now);
        return std::nullopt;
    }

    // 2. signature before anything else observable
    if (!verify_request_signature(msg, *pk)) {
        log_deny(DenyReason::BadSignature, msg, now);
        return std::nullopt;
    }
    {
        std::lock_guard lock(events_mu_);
        events_.push_back(
            {ServerEvent::Kind::SignatureVerified, DenyReason::NoPolicy, now, msg.nonce,
             msg.user_ref});
    }

    // 3. replay window
    if (replayed(msg.nonce, now)) {
        log_deny(DenyReason::Replay, msg, now);
        return std::nullopt;
    }

    // 4. authorization
    if (cfg_.auth_path == MapServiceConfig::AuthPath::Trie) {
        if (registered_eid == 0 || registered_eid != msg.src_eid) {
            log_deny(DenyReason::NoPolicy, msg, now);
            return std::nullopt;
        }
        auto r = lookup_pair(msg.src_eid, msg.dst_eid);
        if (!r.record) {
            log_deny(DenyReason::NoPolicy, msg, now);
            return std::nullopt;
        }
        if (r.record->expiry_ms && *r.record->expiry_ms < now) {
            log_deny(DenyReason::Expired, msg, now);
            return std::nullopt;
        }
    } else {
        // expired policies read as absent on this path
        auto access = ledger_->check_access(msg.user_ref, msg.src_eid, msg.dst_eid);
        if (access != ledger::EidAccess::Allow) {
            log_deny(access == ledger::EidAccess::UnknownUser ? DenyReason::UnknownUser
                                                              : DenyReason::NoPolicy,
                     msg, now);
            return std::nullopt;
        }
    }

    // 5. the router terminates the tunnel and owns the association
    SecurityAssociation sa = router_->establish(msg.nonce, msg.src_eid, msg.dst_eid);
    auto sealed = crypto::seal(*pk, encode_association(sa));
    if (!sealed) {
        log_deny(DenyReason::BadSignature, msg, now);  // key unusable for sealing
        return std::nullopt;
    }

    MapReply reply;
    reply.nonce = msg.nonce;
    reply.src_eid = msg.src_eid;
    reply.dst_eid = msg.dst_eid;
    reply.sealed_payload = std::move(*sealed);

    replies_sent_.fetch_add(1, std::memory_order_relaxed);
    {
        std::lock_guard lock(events_mu_);
        events_.push_back(
            {ServerEvent::Kind::ReplySent, DenyReason::NoPolicy, now, msg.nonce, msg.user_ref});
    }
    return reply;
}

std::optional<Bytes> MapService::handle_frame(const Bytes& frame) {
    auto decoded = decode_message(frame);
    if (!decoded) {
        malformed_frames_.fetch_add(1, std::memory_order_relaxed);
        return std::nullopt;
    }
    auto* req = std::get_if<MapRequest>(&decoded.value());
    if (!req) {
        malformed_frames_.fetch_add(1, std::memory_order_relaxed);
        return std::nullopt;
    }
    auto reply = handle_map_request(*req);
    if (!reply) return std::nullopt;
    return encode_message(*reply);
}

PolicyTrie::LookupResult MapService::lookup_pair(uint32_t src_eid, uint32_t dst_eid) const {
    std::shared_lock lock(tables_mu_);
    return trie_.lookup(PolicyTrie::pair_key(src_eid, dst_eid));
}

size_t MapService::trie_entries() const {
    std::shared_lock lock(tables_mu_);
    return trie_.size();
}

size_t MapService::user_count() const {
    std::shared_lock lock(tables_mu_);
    return users_.size();
}

std::vector<ServerEvent> MapService::events() const {
    std::lock_guard lock(events_mu_);
    return events_;
}

Result<SecurityAssociation, CtrlError> establish_association(const MapReply& reply,
                                                             const crypto::PublicKey& user_pk,
                                                             const crypto::SecretKey& user_sk) {
    auto plain = crypto::unseal(user_pk, user_sk, reply.sealed_payload);
    if (!plain)
        return CtrlError{CtrlErrorCode::DecryptFailure, "sealed payload does not open"};
    auto sa = decode_association(*plain);
    if (!sa) return CtrlError{CtrlErrorCode::DecryptFailure, "payload malformed after unseal"};
    return *sa;
}

}  // namespace xdac::ctrl
