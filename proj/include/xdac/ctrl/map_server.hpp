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

#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "xdac/common/clock.hpp"
#include "xdac/ctrl/messages.hpp"
#include "xdac/ctrl/trie.hpp"
#include "xdac/ledger/api.hpp"

namespace xdac::ctrl {

constexpr uint8_t kCipherSuiteChaCha20Poly1305 = 1;

struct SecurityAssociation {
    std::array<uint8_t, 32> shared_secret{};
    uint8_t cipher_suite = kCipherSuiteChaCha20Poly1305;
    uint32_t lifetime_s = 0;

    bool operator==(const SecurityAssociation&) const = default;
};

Bytes encode_association(const SecurityAssociation& sa);
std::optional<SecurityAssociation> decode_association(const Bytes& b);

enum class DenyReason : uint8_t { BadSignature, UnknownUser, NoPolicy, Expired, Replay };
const char* deny_reason_name(DenyReason r);

struct ServerEvent {
    enum class Kind : uint8_t { SignatureVerified, ReplySent, Denied };
    Kind kind;
    DenyReason reason = DenyReason::NoPolicy;  // meaningful for Denied only
    uint64_t time_ms = 0;
    uint64_t nonce = 0;
    std::string user_ref;
};

/// Terminates tunnels on the resource side: generates the security
/// association for each granted request and later accepts or rejects
/// connections that present one.
class TunnelRouter {
public:
    TunnelRouter(Clock* clock, uint32_t sa_lifetime_s) : clock_(clock), lifetime_s_(sa_lifetime_s) {}

    SecurityAssociation establish(uint64_t nonce, uint32_t src_eid, uint32_t dst_eid);

    /// Models "use" of an association: true only for a known, unexpired
    /// secret on the same (src, dst) pair.
    bool accept(const std::array<uint8_t, 32>& shared_secret, uint32_t src_eid,
                uint32_t dst_eid) const;

    std::optional<SecurityAssociation> association_for(uint64_t nonce) const;

private:
    struct Entry {
        SecurityAssociation sa;
        uint32_t src_eid, dst_eid;
        uint64_t created_ms;
    };
    Clock* clock_;
    uint32_t lifetime_s_;
    mutable std::mutex mu_;
    std::map<uint64_t, Entry> by_nonce_;
};

struct MapServiceConfig {
    enum class AuthPath : uint8_t {
        Trie,    // synced snapshot, constant-cost lookups
        Ledger,  // query the ledger per request
    };
    AuthPath auth_path = AuthPath::Trie;
    uint64_t replay_window_ms = 60'000;
    uint32_t sa_lifetime_s = 3600;
};

/// Map-resolution service: verifies signed Map Requests against ledger
/// user keys, authorizes the (source, destination) pair, and answers
/// granted requests with an encrypted security association. Every failed
/// check yields silence on the wire plus one logged deny event.
class MapService {
public:
    MapService(MapServiceConfig cfg, Clock* clock, TunnelRouter* router,
               ledger::LedgerQueryInterface* ledger = nullptr);

    /// Replaces trie and user-key table contents with the given snapshot
    /// (stale entries removed, new ones inserted). Readers never observe a
    /// half-applied snapshot.
    void sync_from_ledger(const std::vector<ledger::AuthorizedPair>& pairs,
                          const std::vector<ledger::UserKeyRecord>& users);

    /// Pull-based sync via the attached ledger query interface.
    bool sync_from_ledger();

    /// nullopt = Silence: the deny signal observable on the wire.
    std::optional<MapReply> handle_map_request(const MapRequest& msg);

    /// Transport entry point: decode, dispatch, encode. Undecodable frames
    /// and non-request messages are dropped silently.
    std::optional<Bytes> handle_frame(const Bytes& frame);

    /// Trie lookup with visit accounting (fast path internals, also used
    /// by the latency experiments).
    PolicyTrie::LookupResult lookup_pair(uint32_t src_eid, uint32_t dst_eid) const;

    size_t trie_entries() const;
    size_t user_count() const;

    std::vector<ServerEvent> events() const;
    uint64_t replies_sent() const { return replies_sent_.load(); }
    uint64_t denies() const { return denies_.load(); }
    uint64_t malformed_frames() const { return malformed_frames_.load(); }

private:
    struct UserEntry {
        crypto::PublicKey pubkey{};
        uint32_t eid = 0;
    };

    void log_deny(DenyReason reason, const MapRequest& msg, uint64_t now);
    bool replayed(uint64_t nonce, uint64_t now);

    MapServiceConfig cfg_;
    Clock* clock_;
    TunnelRouter* router_;
    ledger::LedgerQueryInterface* ledger_;

    mutable std::shared_mutex tables_mu_;
    PolicyTrie trie_;
    std::unordered_map<std::string, UserEntry> users_;

    std::mutex nonce_mu_;
    std::unordered_map<uint64_t, uint64_t> nonce_seen_until_;

    mutable std::mutex events_mu_;
    std::vector<ServerEvent> events_;

    std::atomic<uint64_t> replies_sent_{0};
    std::atomic<uint64_t> denies_{0};
    std::atomic<uint64_t> malformed_frames_{0};
};

enum class CtrlErrorCode : uint8_t { DecryptFailure };

struct CtrlError {
    CtrlErrorCode code;
    std::string detail;
};

/// User-side completion of the handshake: unseal the reply with the
/// requester's key and recover the security association.
Result<SecurityAssociation, CtrlError> establish_association(const MapReply& reply,
                                                             const crypto::PublicKey& user_pk,
                                                             const crypto::SecretKey& user_sk);

}  // namespace xdac::ctrl
