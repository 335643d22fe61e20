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
#include <mutex>
#include <thread>

#include "xdac/ledger/ledger.hpp"

namespace xdac::ledger {

/// Query surface consumed by the control plane, available in-process and
/// over a local socket (docs/ledger-api.md).
class LedgerQueryInterface {
public:
    virtual ~LedgerQueryInterface() = default;
    virtual std::optional<PolicyBody> get_policy(const std::string& src_ref,
                                                 const std::string& dst_ref) = 0;
    virtual std::optional<crypto::PublicKey> get_user_pubkey(const std::string& user_ref) = 0;
    virtual std::optional<StateStore::Entry> get_state(const std::string& key) = 0;
    virtual std::vector<PolicyPair> export_policy_snapshot() = 0;
    virtual std::vector<AuthorizedPair> export_authorized_pairs() = 0;
    virtual std::vector<UserKeyRecord> export_user_keys() = 0;
    virtual EidAccess check_access(const std::string& user_ref, uint32_t src_eid,
                                   uint32_t dst_eid) = 0;
};

class InProcessLedgerQuery : public LedgerQueryInterface {
public:
    explicit InProcessLedgerQuery(const Ledger& ledger) : ledger_(ledger) {}

    std::optional<PolicyBody> get_policy(const std::string& src, const std::string& dst) override {
        return ledger_.query_policy(src, dst);
    }
    std::optional<crypto::PublicKey> get_user_pubkey(const std::string& user_ref) override {
        return ledger_.get_user_pubkey(user_ref);
    }
    std::optional<StateStore::Entry> get_state(const std::string& key) override {
        return ledger_.query_state(key);
    }
    std::vector<PolicyPair> export_policy_snapshot() override {
        return ledger_.export_policy_snapshot();
    }
    std::vector<AuthorizedPair> export_authorized_pairs() override {
        return ledger_.export_authorized_pairs();
    }
    std::vector<UserKeyRecord> export_user_keys() override { return ledger_.export_user_keys(); }
    EidAccess check_access(const std::string& user_ref, uint32_t src, uint32_t dst) override {
        return ledger_.check_access_by_eid(user_ref, src, dst);
    }

private:
    const Ledger& ledger_;
};

/// TCP server speaking length-prefixed request/response records on
/// 127.0.0.1. One thread per connection; requests on a connection are
/// handled in order.
class LedgerApiServer {
public:
    explicit LedgerApiServer(const Ledger& ledger) : query_(ledger) {}
    ~LedgerApiServer() { stop(); }

    /// Binds 127.0.0.1:port (0 picks an ephemeral port) and starts serving.
    Result<uint16_t, std::string> start(uint16_t port);
    void stop();
    uint16_t port() const { return port_; }

private:
    void accept_loop();
    void serve_connection(int fd);

    InProcessLedgerQuery query_;
    int listen_fd_ = -1;
    uint16_t port_ = 0;
    std::atomic<bool> running_{false};
    std::thread accept_thread_;
    std::mutex conns_mu_;
    std::vector<int> conn_fds_;
    std::vector<std::thread> conn_threads_;
};

/// Client side of the socket API; also usable as the map server's
/// slow-path ledger connection. Calls are serialized per client.
class LedgerApiClient : public LedgerQueryInterface {
public:
    static Result<std::unique_ptr<LedgerApiClient>, std::string> connect(
        const std::string& host, uint16_t port);
    ~LedgerApiClient() override;

    std::optional<PolicyBody> get_policy(const std::string& src,
                                         const std::string& dst) override;
    std::optional<crypto::PublicKey> get_user_pubkey(const std::string& user_ref) override;
    std::optional<StateStore::Entry> get_state(const std::string& key) override;
    std::vector<PolicyPair> export_policy_snapshot() override;
    std::vector<AuthorizedPair> export_authorized_pairs() override;
    std::vector<UserKeyRecord> export_user_keys() override;
    EidAccess check_access(const std::string& user_ref, uint32_t src, uint32_t dst) override;

private:
    explicit LedgerApiClient(int fd) : fd_(fd) {}
    std::optional<Bytes> round_trip(const Bytes& request);

    std::mutex mu_;
    int fd_;
};

}  // namespace xdac::ledger
